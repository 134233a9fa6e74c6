#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rbforge/corpus.hpp"
#include "rbforge/rb_system.hpp"
#include "rbforge/search.hpp"
#include "rbforge/version.hpp"

namespace rbforge::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars serialize as strings in the grammar [-]digits[/digits], never as
// JSON numbers, so rationals and big integers survive interchange exactly.
// ---------------------------------------------------------------------------

inline FieldSpec field_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw LoadError("field: expected object with string \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return {FieldKind::Rationals, 0};
  if (kind == "Fp") {
    if (!j.contains("p") || !j.at("p").is_number_unsigned())
      throw LoadError("field of kind Fp needs an unsigned \"p\"");
    return {FieldKind::PrimeField, j.at("p").get<std::uint64_t>()};
  }
  throw LoadError("field kind must be \"Q\" or \"Fp\", got \"" + kind + "\"");
}

inline json field_spec_to_json(const FieldSpec& spec) {
  if (spec.kind == FieldKind::Rationals) return json{{"kind", "Q"}};
  return json{{"kind", "Fp"}, {"p", spec.p}};
}

/// Dispatch a generic callable on the concrete field type of a spec.
template <class Fn>
auto with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldKind::Rationals) return fn(QField{});
  return fn(FpField(spec.p));
}

namespace detail {

template <Field F>
typename F::Scalar scalar_from_json(const F& field, const json& j) {
  if (!j.is_string())
    throw LoadError("scalars must be strings, got " + j.dump());
  return field.parse(j.get<std::string>());
}

template <class K>
json scalar_vector_to_json(const std::vector<K>& v) {
  json out = json::array();
  for (const K& x : v) out.push_back(x.str());
  return out;
}

template <Field F>
std::vector<typename F::Scalar> scalar_vector_from_json(const F& field,
                                                        const json& j,
                                                        std::size_t want) {
  if (!j.is_array() || j.size() != want)
    throw LoadError("expected array of " + std::to_string(want) + " scalars");
  std::vector<typename F::Scalar> out;
  out.reserve(want);
  for (const auto& e : j) out.push_back(scalar_from_json(field, e));
  return out;
}

}  // namespace detail

// Matrices serialize as coeff[k][i] (row k lists the coefficient of e_k in
// the image of each basis vector e_i: the column-action convention).
template <Field F>
json matrix_to_json(const Mat<typename F::Scalar>& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    out.push_back(std::move(row));
  }
  return out;
}

template <Field F>
Mat<typename F::Scalar> matrix_from_json(const F& field, const json& j,
                                         std::size_t n) {
  if (!j.is_array() || j.size() != n)
    throw LoadError("expected " + std::to_string(n) + " matrix rows");
  Mat<typename F::Scalar> m(n, n, field.zero());
  for (std::size_t r = 0; r < n; ++r) {
    auto row = detail::scalar_vector_from_json(field, j.at(r), n);
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = row[c];
  }
  return m;
}

template <Field F>
json tensor3_to_json(const Tensor3<typename F::Scalar>& t) {
  json out = json::array();
  for (std::size_t i = 0; i < t.dim0(); ++i) {
    json plane = json::array();
    for (std::size_t j = 0; j < t.dim1(); ++j) {
      json row = json::array();
      for (std::size_t k = 0; k < t.dim2(); ++k)
        row.push_back(t.at(i, j, k).str());
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

template <Field F>
Tensor3<typename F::Scalar> tensor3_from_json(const F& field, const json& j,
                                              std::size_t n) {
  if (!j.is_array() || j.size() != n)
    throw LoadError("expected rank-3 tensor with leading dimension " +
                    std::to_string(n));
  Tensor3<typename F::Scalar> t(n, n, n, field.zero());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& plane = j.at(i);
    if (!plane.is_array() || plane.size() != n)
      throw LoadError("tensor plane has wrong size");
    for (std::size_t jj = 0; jj < n; ++jj) {
      auto row = detail::scalar_vector_from_json(field, plane.at(jj), n);
      for (std::size_t k = 0; k < n; ++k) t.at(i, jj, k) = row[k];
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// System files. "mul" is mandatory; "R"/"S" make the file a system file
// (algebra-only files omit them); "omega" may be omitted, in which case the
// curvature is derived from the defining identities downstream.
// ---------------------------------------------------------------------------

template <Field F>
struct LoadedSystem {
  Algebra<F> algebra;
  std::optional<LinearOperator<F>> R;
  std::optional<LinearOperator<F>> S;
  std::optional<BilinearMap<F>> omega;
};

template <Field F>
LoadedSystem<F> load_system_as(const F& field, const json& j) {
  if (!j.is_object()) throw LoadError("top-level document must be an object");
  if (j.contains("rbforge-schema") &&
      j.at("rbforge-schema") != json(kSchemaVersion))
    throw LoadError("unsupported rbforge-schema version");
  if (!j.contains("field")) throw LoadError("missing \"field\"");
  if (!(field_spec_from_json(j.at("field")) == field.spec()))
    throw LoadError("document field spec does not match the requested field");
  if (!j.contains("dim") || !j.at("dim").is_number_unsigned())
    throw LoadError("missing unsigned \"dim\"");
  const std::size_t n = j.at("dim").get<std::size_t>();
  if (n == 0 || n > 8) throw LoadError("dim must be between 1 and 8");
  if (!j.contains("mul")) throw LoadError("missing \"mul\" tensor");
  auto mul = tensor3_from_json(field, j.at("mul"), n);
  std::optional<std::vector<typename F::Scalar>> unit;
  if (j.contains("unit") && !j.at("unit").is_null())
    unit = detail::scalar_vector_from_json(field, j.at("unit"), n);
  Algebra<F> A(field, n, std::move(mul), std::move(unit));

  LoadedSystem<F> out{std::move(A), std::nullopt, std::nullopt, std::nullopt};
  if (j.contains("R"))
    out.R = operator_from_matrix(out.algebra,
                                 matrix_from_json(field, j.at("R"), n));
  if (j.contains("S"))
    out.S = operator_from_matrix(out.algebra,
                                 matrix_from_json(field, j.at("S"), n));
  if (j.contains("omega") && !j.at("omega").is_null())
    out.omega = bilinear_from_tensor(
        out.algebra, tensor3_from_json(field, j.at("omega"), n));
  return out;
}

template <Field F>
json save_algebra(const Algebra<F>& A) {
  json j;
  j["rbforge-schema"] = kSchemaVersion;
  j["field"] = field_spec_to_json(A.field().spec());
  j["dim"] = A.dim();
  j["mul"] = tensor3_to_json<F>(A.mul_tensor());
  if (A.is_unital())
    j["unit"] = detail::scalar_vector_to_json(A.unit()->coeffs());
  return j;
}

template <Field F>
json save_system(const CurvedRBSystem<F>& sys) {
  json j = save_algebra(sys.algebra());
  j["R"] = matrix_to_json<F>(sys.R().coeff);
  j["S"] = matrix_to_json<F>(sys.S().coeff);
  j["omega"] = tensor3_to_json<F>(sys.omega().coeff);
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw LoadError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Builtin corpus registry: every named entry has an identical JSON file
// shipped under corpus/; a test pins the equivalence.
// ---------------------------------------------------------------------------

// ---------------------------------------------------------------------------
// Classification reports. Deliberately carries no wall-clock data: the same
// inputs must serialize to the same bytes no matter how many workers ran.
// ---------------------------------------------------------------------------

inline std::string predicate_mask_name(unsigned mask) {
  if (mask == 0) return "none";
  std::string out;
  for (const auto& [bit, name] : search_predicate_names())
    if (mask & bit) {
      if (!out.empty()) out += "+";
      out += name;
    }
  return out;
}

inline json search_witness_to_json(const Algebra<FpField>& A,
                                   const SearchWitness& wit) {
  CurvedRBSystem<FpField> sys(A, LinearOperator<FpField>{wit.r_matrix},
                              LinearOperator<FpField>{wit.s_matrix},
                              BilinearMap<FpField>{wit.omega});
  json predicates = json::array();
  for (const auto& [bit, name] : search_predicate_names())
    if (wit.mask & bit) predicates.push_back(name);
  return json{{"index", wit.index},
              {"predicates", predicates},
              {"system", save_system(sys)}};
}

inline json classification_to_json(const Algebra<FpField>& A,
                                   const ClassificationReport& rep) {
  json counts, witnesses;
  for (const auto& [mask, cnt] : rep.counts)
    counts[predicate_mask_name(mask)] = cnt;
  for (const auto& [mask, wit] : rep.witnesses)
    witnesses[predicate_mask_name(mask)] = search_witness_to_json(A, wit);
  return json{{"examined", rep.examined},
              {"counts", counts},
              {"witnesses", witnesses}};
}

inline const std::vector<std::string>& builtin_corpus_names() {
  static const std::vector<std::string> names = {
      // algebras
      "f2_dim1_null", "f2_dim1_unital", "f2_dim2_null", "f2_dim2_px2",
      "f2_dim2_pxp", "f3_dim1_null", "f3_dim1_unital", "f3_dim2_null",
      "f3_dim2_px2", "f3_dim2_pxp", "q_qx2", "q_m2",
      // systems
      "f2_dim1_idid", "f2_dim1_0id", "qx2_nonbalanced", "m2_casimir",
      "m2_casimir_r_only"};
  return names;
}

inline std::optional<json> builtin_corpus_json(const std::string& name) {
  using namespace rbforge::corpus;
  const FpField f2(2), f3(3);
  const QField q;
  if (name == "f2_dim1_null") return save_algebra(null_algebra(f2, 1));
  if (name == "f2_dim1_unital") return save_algebra(dim1_unital(f2));
  if (name == "f2_dim2_null") return save_algebra(null_algebra(f2, 2));
  if (name == "f2_dim2_px2") return save_algebra(poly_x2(f2));
  if (name == "f2_dim2_pxp") return save_algebra(product_field(f2));
  if (name == "f3_dim1_null") return save_algebra(null_algebra(f3, 1));
  if (name == "f3_dim1_unital") return save_algebra(dim1_unital(f3));
  if (name == "f3_dim2_null") return save_algebra(null_algebra(f3, 2));
  if (name == "f3_dim2_px2") return save_algebra(poly_x2(f3));
  if (name == "f3_dim2_pxp") return save_algebra(product_field(f3));
  if (name == "q_qx2") return save_algebra(poly_x2(q));
  if (name == "q_m2") return save_algebra(matrix2_rationals());
  if (name == "f2_dim1_idid") return save_system(f2_dim1_idid());
  if (name == "f2_dim1_0id") return save_system(f2_dim1_0id());
  if (name == "qx2_nonbalanced") return save_system(qx2_nonbalanced());
  if (name == "m2_casimir") return save_system(m2_casimir());
  if (name == "m2_casimir_r_only") return save_system(m2_casimir_r_only());
  return std::nullopt;
}

}  // namespace rbforge::io
