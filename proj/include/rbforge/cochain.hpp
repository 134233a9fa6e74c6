#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rbforge/rb_system.hpp"
#include "rbforge/rng.hpp"

namespace rbforge {

/// Highest cochain degree accepted as an operation input. Outputs may exceed
/// this (d raises degree by one, cup adds degrees); storage is dense, so the
/// cap keeps tensor sizes at desk scale.
inline constexpr std::size_t kMaxCochainDegree = 4;

/// Two conventions for the degree-raising differential
///   d(f)(a_0,...,a_n) = R(a_0) f(a_1,...,a_n)
///                       + sum_k (-1)^k f(a_0,...,a_{k-1}*a_k,...,a_n)
///                       + (boundary sign) f(a_0,...,a_{n-1}) S(a_n).
/// Corrected: inner sum k = 1..n, boundary sign (-1)^{n+1}. This is the
/// convention under which d o d = [w, -] holds (see check_d_squared).
/// Literal: inner sum k = 1..n-1, boundary sign (-1)^n, i.e. the merge of
/// the last argument pair is dropped. Kept as a documented cross-check; it
/// does not satisfy d o d = [w, -].
enum class DiffConvention { Corrected, Literal };

inline const char* to_string(DiffConvention c) {
  return c == DiffConvention::Corrected ? "corrected" : "literal";
}

// ---------------------------------------------------------------------------
// Cochain: multilinear map A^(x)q -> A as a dense rank-(q+1) tensor with
// layout (args..., out), each axis of size dim(A). Degree 0 is a bare
// element of A.
// ---------------------------------------------------------------------------

template <Field F>
class Cochain {
 public:
  using K = typename F::Scalar;

  Cochain(std::size_t degree, std::size_t dim, std::vector<K> coeff)
      : degree_(degree), dim_(dim), a_(std::move(coeff)) {
    std::size_t want = dim;
    for (std::size_t i = 0; i < degree; ++i) want *= dim;
    detail::require(a_.size() == want, "cochain tensor has wrong size");
  }

  std::size_t degree() const { return degree_; }
  std::size_t dim() const { return dim_; }
  const std::vector<K>& flat() const { return a_; }
  std::vector<K>& flat() { return a_; }

  bool is_zero() const {
    for (const K& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// Value on a basis tuple (args.size() == degree).
  Element<F> eval_basis(const std::vector<std::size_t>& args) const {
    detail::require(args.size() == degree_, "wrong number of arguments");
    std::size_t idx = 0;
    for (std::size_t a : args) idx = idx * dim_ + a;
    std::vector<K> out(a_.begin() + static_cast<std::ptrdiff_t>(idx * dim_),
                       a_.begin() + static_cast<std::ptrdiff_t>((idx + 1) * dim_));
    return Element<F>(std::move(out));
  }

  void set_basis(const std::vector<std::size_t>& args, const Element<F>& v) {
    detail::require(args.size() == degree_ && v.dim() == dim_,
                    "wrong shape in set_basis");
    std::size_t idx = 0;
    for (std::size_t a : args) idx = idx * dim_ + a;
    for (std::size_t k = 0; k < dim_; ++k) a_[idx * dim_ + k] = v[k];
  }

  Cochain operator+(const Cochain& o) const {
    check(o);
    Cochain r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }
  Cochain operator-(const Cochain& o) const {
    check(o);
    Cochain r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }
  Cochain scaled(const K& s) const {
    Cochain r = *this;
    for (K& x : r.a_) x = x * s;
    return r;
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree_ == b.degree_ && a.a_ == b.a_;
  }

 private:
  void check(const Cochain& o) const {
    detail::require(degree_ == o.degree_ && dim_ == o.dim_,
                    "cochain degree/dimension mismatch");
  }
  std::size_t degree_;
  std::size_t dim_;
  std::vector<K> a_;
};

template <Field F>
Cochain<F> zero_cochain(const Algebra<F>& A, std::size_t degree) {
  std::size_t size = A.dim();
  for (std::size_t i = 0; i < degree; ++i) size *= A.dim();
  return Cochain<F>(degree, A.dim(),
                    std::vector<typename F::Scalar>(size, A.field().zero()));
}

/// Degree 0 is canonically an element of A.
template <Field F>
Cochain<F> cochain_of_element(const Algebra<F>& A, const Element<F>& x) {
  detail::require(x.dim() == A.dim(), "element/algebra mismatch");
  return Cochain<F>(0, A.dim(), x.coeffs());
}

/// The identity map of A as a degree-1 cochain.
template <Field F>
Cochain<F> identity_cochain(const Algebra<F>& A) {
  auto f = zero_cochain(A, 1);
  for (std::size_t i = 0; i < A.dim(); ++i)
    f.flat()[i * A.dim() + i] = A.field().one();
  return f;
}

/// A curvature candidate as a degree-2 cochain (identical flat layouts).
template <Field F>
Cochain<F> cochain_from_bilinear(const Algebra<F>& A,
                                 const BilinearMap<F>& w) {
  detail::require(w.coeff.dim0() == A.dim(), "bilinear/algebra mismatch");
  return Cochain<F>(2, A.dim(), w.coeff.flat());
}

template <Field F>
Cochain<F> random_cochain(const Algebra<F>& A, std::size_t degree,
                          SplitMix64& rng) {
  auto f = zero_cochain(A, degree);
  for (auto& x : f.flat()) x = A.field().sample(rng);
  return f;
}

/// Exhaustive enumeration of all cochains of one degree over a finite field.
/// `cap` guards against accidentally huge requests.
template <Field F>
  requires(F::finite)
std::vector<Cochain<F>> all_cochains(const Algebra<F>& A, std::size_t degree,
                                     std::size_t cap) {
  std::size_t size = A.dim();
  for (std::size_t i = 0; i < degree; ++i) size *= A.dim();
  const std::uint64_t p = A.field().order();
  double total = 1;
  for (std::size_t i = 0; i < size; ++i) total *= static_cast<double>(p);
  detail::require(total <= static_cast<double>(cap),
                  "exhaustive cochain family exceeds cap");
  std::vector<Cochain<F>> out;
  for (Odometer od(size, static_cast<std::size_t>(p)); !od.done();
       od.advance()) {
    auto f = zero_cochain(A, degree);
    for (std::size_t i = 0; i < size; ++i)
      f.flat()[i] = A.field().nth(od.digits()[i]);
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cup product: (fg)(a_1,...,a_{m+n}) = f(a_1,...,a_m) g(a_{m+1},...,a_{m+n}).
// ---------------------------------------------------------------------------

template <Field F>
Cochain<F> cup(const Algebra<F>& A, const Cochain<F>& f, const Cochain<F>& g) {
  detail::require(f.dim() == A.dim() && g.dim() == A.dim(),
                  "cup: algebra mismatch");
  if (f.degree() > kMaxCochainDegree || g.degree() > kMaxCochainDegree)
    throw CapacityError("cup arguments above the degree cap");
  const std::size_t m = f.degree(), q = g.degree(), n = A.dim();
  auto out = zero_cochain(A, m + q);
  for (Odometer od(m + q, n); !od.done(); od.advance()) {
    const auto& t = od.digits();
    std::vector<std::size_t> left(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<std::size_t> right(t.begin() + static_cast<std::ptrdiff_t>(m), t.end());
    out.set_basis(t, A.mul(f.eval_basis(left), g.eval_basis(right)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The modified Hochschild differential.
// ---------------------------------------------------------------------------

namespace detail {

/// f evaluated on a basis tuple with one slot replaced by a full element.
template <Field F>
Element<F> eval_with_slot(const Algebra<F>& A, const Cochain<F>& f,
                          std::vector<std::size_t> args, std::size_t slot,
                          const Element<F>& v) {
  auto acc = A.zero();
  for (std::size_t t = 0; t < A.dim(); ++t) {
    if (v[t].is_zero()) continue;
    args[slot] = t;
    acc += f.eval_basis(args).scaled(v[t]);
  }
  return acc;
}

}  // namespace detail

template <Field F>
Cochain<F> differential(const CurvedRBSystem<F>& sys, const Cochain<F>& f,
                        DiffConvention conv = DiffConvention::Corrected) {
  const auto& A = sys.algebra();
  detail::require(f.dim() == A.dim(), "differential: algebra mismatch");
  if (!sys.verified())
    throw PreconditionError("differential requires a verified system");
  if (f.degree() > kMaxCochainDegree)
    throw CapacityError("cochain degree above the supported cap");
  const std::size_t q = f.degree(), n = A.dim();
  const auto one = A.field().one();
  const auto minus_one = -one;
  auto out = zero_cochain(A, q + 1);
  const std::size_t merge_upto = conv == DiffConvention::Corrected
                                     ? q
                                     : (q == 0 ? 0 : q - 1);  // inclusive
  const bool boundary_negative =
      conv == DiffConvention::Corrected ? (q + 1) % 2 == 1 : q % 2 == 1;

  for (Odometer od(q + 1, n); !od.done(); od.advance()) {
    const auto& a = od.digits();
    std::vector<std::size_t> tail(a.begin() + 1, a.end());
    auto acc = A.mul(apply_linear(A, sys.R(), A.basis(a[0])),
                     f.eval_basis(tail));
    for (std::size_t k = 1; k <= merge_upto; ++k) {
      auto merged = sys.star(A.basis(a[k - 1]), A.basis(a[k]));
      // arguments (a_0,...,a_{k-2}, merged, a_{k+1},...,a_q)
      std::vector<std::size_t> args;
      args.reserve(q);
      for (std::size_t t = 0; t + 1 < k; ++t) args.push_back(a[t]);
      args.push_back(0);  // slot placeholder
      for (std::size_t t = k + 1; t <= q; ++t) args.push_back(a[t]);
      auto val = detail::eval_with_slot(A, f, std::move(args), k - 1, merged);
      acc += k % 2 == 1 ? val.scaled(minus_one) : val;
    }
    std::vector<std::size_t> head(a.begin(), a.end() - 1);
    auto boundary =
        A.mul(f.eval_basis(head), apply_linear(A, sys.S(), A.basis(a[q])));
    acc += boundary_negative ? boundary.scaled(minus_one) : boundary;
    out.set_basis(a, acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graded commutator with the degree-2 curvature: [w, f] = w f - f w.
// deg w = 2 is even, so the graded sign on the second term is +1; only this
// even case is ever exercised here.
// ---------------------------------------------------------------------------

template <Field F>
Cochain<F> graded_commutator(const Algebra<F>& A, const BilinearMap<F>& w,
                             const Cochain<F>& f) {
  auto wc = cochain_from_bilinear(A, w);
  return cup(A, wc, f) - cup(A, f, wc);
}

/// Residual of d(d(f)) = [w, f]; the zero cochain iff the identity holds
/// for this f.
template <Field F>
Cochain<F> check_d_squared(const CurvedRBSystem<F>& sys, const Cochain<F>& f,
                           DiffConvention conv = DiffConvention::Corrected) {
  auto dd = differential(sys, differential(sys, f, conv), conv);
  return dd - graded_commutator(sys.algebra(), sys.omega(), f);
}

/// Residual of the graded Leibniz rule:
/// d(fg) - d(f) g - (-1)^{deg f} f d(g).
template <Field F>
Cochain<F> check_leibniz(const CurvedRBSystem<F>& sys, const Cochain<F>& f,
                         const Cochain<F>& g,
                         DiffConvention conv = DiffConvention::Corrected) {
  const auto& A = sys.algebra();
  auto lhs = differential(sys, cup(A, f, g), conv);
  auto rhs = cup(A, differential(sys, f, conv), g);
  auto fd = cup(A, f, differential(sys, g, conv));
  if (f.degree() % 2 == 1) fd = fd.scaled(-A.field().one());
  return lhs - rhs - fd;
}

// ---------------------------------------------------------------------------
// Hochschild 2-cocycle condition and the first-order deformation expansion.
// ---------------------------------------------------------------------------

template <Field F>
struct CocycleCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> witness;
};

/// a w(b (x) c) - w(ab (x) c) + w(a (x) bc) - w(a (x) b) c = 0 on basis
/// triples.
template <Field F>
CocycleCheck<F> is_cocycle(const Algebra<F>& A, const BilinearMap<F>& w) {
  const std::size_t n = A.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        auto ea = A.basis(a), eb = A.basis(b), ec = A.basis(c);
        auto defect = A.mul(ea, apply_bilinear(A, w, eb, ec)) -
                      apply_bilinear(A, w, A.mul(ea, eb), ec) +
                      apply_bilinear(A, w, ea, A.mul(eb, ec)) -
                      A.mul(apply_bilinear(A, w, ea, eb), ec);
        if (!defect.is_zero())
          return {false, std::array<std::size_t, 3>{a, b, c}};
      }
  return {};
}

/// Expands the associator of mu + lambda w as lambda L + lambda^2 Q (the
/// lambda^0 term vanishes because mu is associative; this is asserted).
/// L and Q are returned as degree-3 cochains:
///   L(a,b,c) = w(ab (x) c) + w(a (x) b) c - a w(b (x) c) - w(a (x) bc)
///   Q(a,b,c) = w(w(a (x) b) (x) c) - w(a (x) w(b (x) c)).
/// L = 0 on basis triples iff w is a 2-cocycle.
template <Field F>
struct DeformationExpansion {
  Cochain<F> linear_term;     // L
  Cochain<F> quadratic_term;  // Q
};

template <Field F>
DeformationExpansion<F> deformed_associator(const Algebra<F>& A,
                                            const BilinearMap<F>& w) {
  const std::size_t n = A.dim();
  DeformationExpansion<F> out{zero_cochain(A, 3), zero_cochain(A, 3)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        auto ea = A.basis(a), eb = A.basis(b), ec = A.basis(c);
        auto mu0 = A.mul(A.mul(ea, eb), ec) - A.mul(ea, A.mul(eb, ec));
        detail::internal_check(mu0.is_zero(),
                               "lambda^0 associator term must vanish");
        auto linear = apply_bilinear(A, w, A.mul(ea, eb), ec) +
                      A.mul(apply_bilinear(A, w, ea, eb), ec) -
                      A.mul(ea, apply_bilinear(A, w, eb, ec)) -
                      apply_bilinear(A, w, ea, A.mul(eb, ec));
        auto quad =
            apply_bilinear(A, w, apply_bilinear(A, w, ea, eb), ec) -
            apply_bilinear(A, w, ea, apply_bilinear(A, w, eb, ec));
        out.linear_term.set_basis({a, b, c}, linear);
        out.quadratic_term.set_basis({a, b, c}, quad);
      }
  return out;
}

// ---------------------------------------------------------------------------
// Curved differential graded algebra check: preconditions R = S and
// bimodule curvature (reported, never conflated with identity failures),
// then Leibniz, d(w) = 0, d^2 = [w, -], and the middle-merge identity
// w(ab (x) c) = w(a (x) bc) used to derive d(w) = 0.
// ---------------------------------------------------------------------------

template <Field F>
struct CurvedDgaReport {
  bool r_equals_s = true;
  BimoduleCheck<F> bimodule;
  bool preconditions_ok() const { return r_equals_s && bimodule.ok; }

  bool leibniz_ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> leibniz_witness_degrees;
  bool d_omega_zero = true;
  bool d_squared_ok = true;
  std::optional<std::size_t> d_squared_witness_degree;
  bool middle_merge_ok = true;

  bool identities_ok() const {
    return leibniz_ok && d_omega_zero && d_squared_ok && middle_merge_ok;
  }
  bool pass() const { return preconditions_ok() && identities_ok(); }
};

template <Field F>
CurvedDgaReport<F> check_curved_dga(const CurvedRBSystem<F>& sys,
                                    std::size_t max_degree,
                                    std::size_t samples_per_degree = 12,
                                    std::uint64_t seed = 0,
                                    DiffConvention conv =
                                        DiffConvention::Corrected) {
  if (!sys.verified())
    throw PreconditionError("check_curved_dga requires a verified system");
  detail::require(max_degree <= kMaxCochainDegree - 2,
                  "max_degree too large for the cochain degree cap");
  const auto& A = sys.algebra();
  CurvedDgaReport<F> rep;
  rep.r_equals_s = sys.R() == sys.S();
  rep.bimodule = is_bimodule_map(A, sys.omega());
  if (!rep.preconditions_ok()) return rep;

  // test family per degree: exhaustive over small finite fields, seeded
  // samples otherwise
  std::vector<std::vector<Cochain<F>>> family(max_degree + 1);
  SplitMix64 rng = SplitMix64::for_index(seed, 0xc0c8a19);
  for (std::size_t d = 0; d <= max_degree; ++d) {
    bool exhausted = false;
    if constexpr (F::finite) {
      std::size_t size = A.dim();
      for (std::size_t i = 0; i < d; ++i) size *= A.dim();
      double total = 1;
      for (std::size_t i = 0; i < size; ++i)
        total *= static_cast<double>(A.field().order());
      if (total <= 512) {
        family[d] = all_cochains(A, d, 512);
        exhausted = true;
      }
    }
    if (!exhausted)
      for (std::size_t s = 0; s < samples_per_degree; ++s)
        family[d].push_back(random_cochain(A, d, rng));
  }

  for (std::size_t df = 0; df <= max_degree && rep.leibniz_ok; ++df)
    for (std::size_t dg = 0; dg <= max_degree && rep.leibniz_ok; ++dg) {
      if (df + dg > kMaxCochainDegree) continue;
      for (const auto& f : family[df]) {
        for (const auto& g : family[dg])
          if (!check_leibniz(sys, f, g, conv).is_zero()) {
            rep.leibniz_ok = false;
            rep.leibniz_witness_degrees = {df, dg};
            break;
          }
        if (!rep.leibniz_ok) break;
      }
    }

  rep.d_omega_zero =
      differential(sys, cochain_from_bilinear(A, sys.omega()), conv)
          .is_zero();

  for (std::size_t d = 0; d <= max_degree && rep.d_squared_ok; ++d)
    for (const auto& f : family[d])
      if (!check_d_squared(sys, f, conv).is_zero()) {
        rep.d_squared_ok = false;
        rep.d_squared_witness_degree = d;
        break;
      }

  for (std::size_t a = 0; a < A.dim() && rep.middle_merge_ok; ++a)
    for (std::size_t b = 0; b < A.dim() && rep.middle_merge_ok; ++b)
      for (std::size_t c = 0; c < A.dim(); ++c) {
        auto lhs = apply_bilinear(A, sys.omega(),
                                  A.mul(A.basis(a), A.basis(b)), A.basis(c));
        auto rhs = apply_bilinear(A, sys.omega(), A.basis(a),
                                  A.mul(A.basis(b), A.basis(c)));
        if (!(lhs == rhs)) {
          rep.middle_merge_ok = false;
          break;
        }
      }
  return rep;
}

}  // namespace rbforge
