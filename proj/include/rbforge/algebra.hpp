#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rbforge/containers.hpp"
#include "rbforge/error.hpp"
#include "rbforge/scalar.hpp"

namespace rbforge {

template <Field F>
class Algebra;

// ---------------------------------------------------------------------------
// Element: coefficient vector in the algebra's distinguished basis.
// ---------------------------------------------------------------------------

template <Field F>
class Element {
 public:
  using K = typename F::Scalar;

  explicit Element(std::vector<K> coeff) : c_(std::move(coeff)) {}

  std::size_t dim() const { return c_.size(); }
  const K& operator[](std::size_t i) const { return c_[i]; }
  K& operator[](std::size_t i) { return c_[i]; }
  const std::vector<K>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const K& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  Element operator+(const Element& o) const {
    check(o);
    Element r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  Element operator-(const Element& o) const {
    check(o);
    Element r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  Element operator-() const {
    Element r = *this;
    for (K& x : r.c_) x = -x;
    return r;
  }
  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }

  Element scaled(const K& s) const {
    Element r = *this;
    for (K& x : r.c_) x = x * s;
    return r;
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.c_ == b.c_;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ", ";
      s += c_[i].str();
    }
    return s + ")";
  }

 private:
  void check(const Element& o) const {
    detail::require(c_.size() == o.c_.size(),
                    "element dimension mismatch: " + std::to_string(c_.size()) +
                        " vs " + std::to_string(o.c_.size()));
  }
  std::vector<K> c_;
};

// ---------------------------------------------------------------------------
// Associativity defect of a raw structure-constant tensor.
// ---------------------------------------------------------------------------

template <Field F>
struct AssociativityReport {
  using K = typename F::Scalar;
  std::vector<std::array<std::size_t, 3>> violations;  // (i, j, k) triples
  std::vector<std::vector<K>> residuals;  // (e_i e_j) e_k - e_i (e_j e_k)
  std::string max_norm = "0";             // max |coefficient| over residuals
  bool ok() const { return violations.empty(); }
};

namespace detail {

template <Field F>
std::vector<typename F::Scalar> mul_basis(
    const F& field, const Tensor3<typename F::Scalar>& c,
    const std::vector<typename F::Scalar>& a,
    const std::vector<typename F::Scalar>& b) {
  const std::size_t n = a.size();
  std::vector<typename F::Scalar> out(n, field.zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      auto aij = a[i] * b[j];
      for (std::size_t k = 0; k < n; ++k) out[k] += aij * c.at(i, j, k);
    }
  }
  return out;
}

}  // namespace detail

/// Evaluates the associator (e_i e_j) e_k - e_i (e_j e_k) on every basis
/// triple of a raw mul tensor. Runs before an Algebra is constructed, so a
/// non-associative tensor can still be diagnosed.
template <Field F>
AssociativityReport<F> check_associativity(
    const F& field, std::size_t dim,
    const Tensor3<typename F::Scalar>& mul) {
  using K = typename F::Scalar;
  AssociativityReport<F> rep;
  K max_abs = field.zero();
  auto basis = [&](std::size_t i) {
    std::vector<K> v(dim, field.zero());
    v[i] = field.one();
    return v;
  };
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      auto ij = detail::mul_basis(field, mul, basis(i), basis(j));
      for (std::size_t k = 0; k < dim; ++k) {
        auto lhs = detail::mul_basis(field, mul, ij, basis(k));
        auto rhs = detail::mul_basis(
            field, mul, basis(i),
            detail::mul_basis(field, mul, basis(j), basis(k)));
        std::vector<K> res(dim, field.zero());
        bool zero = true;
        for (std::size_t t = 0; t < dim; ++t) {
          res[t] = lhs[t] - rhs[t];
          if (!res[t].is_zero()) zero = false;
          auto a = res[t].abs();
          if (max_abs.less_than(a)) max_abs = a;
        }
        if (!zero) {
          rep.violations.push_back({i, j, k});
          rep.residuals.push_back(std::move(res));
        }
      }
    }
  rep.max_norm = max_abs.str();
  return rep;
}

namespace detail {

/// Exact Gauss-Jordan solve of M x = rhs; returns any solution, or nothing
/// when the system is inconsistent. Free variables are set to zero.
template <Field F>
std::optional<std::vector<typename F::Scalar>> solve_linear(
    const F& field, Mat<typename F::Scalar> M,
    std::vector<typename F::Scalar> rhs) {
  using K = typename F::Scalar;
  const std::size_t m = M.rows(), n = M.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t pr = rank;
    while (pr < m && M.at(pr, col).is_zero()) ++pr;
    if (pr == m) continue;
    if (pr != rank) {
      for (std::size_t c = 0; c < n; ++c)
        std::swap(M.at(pr, c), M.at(rank, c));
      std::swap(rhs[pr], rhs[rank]);
    }
    K inv = M.at(rank, col).inverse();
    for (std::size_t c = 0; c < n; ++c) M.at(rank, c) = M.at(rank, c) * inv;
    rhs[rank] = rhs[rank] * inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || M.at(r, col).is_zero()) continue;
      K f = M.at(r, col);
      for (std::size_t c = 0; c < n; ++c)
        M.at(r, c) = M.at(r, c) - f * M.at(rank, c);
      rhs[r] = rhs[r] - f * rhs[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r)
    if (!rhs[r].is_zero()) return std::nullopt;
  std::vector<K> x(n, field.zero());
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = rhs[r];
  return x;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Algebra: finite-dimensional associative algebra by structure constants,
// c(i,j,k) meaning e_i e_j = sum_k c(i,j,k) e_k. Associativity is enforced
// at construction; a two-sided unit is located once (declared units are
// validated, otherwise the defining linear system is solved).
// ---------------------------------------------------------------------------

template <Field F>
class Algebra {
 public:
  using K = typename F::Scalar;

  Algebra(F field, std::size_t dim, Tensor3<K> mul,
          std::optional<std::vector<K>> declared_unit = std::nullopt)
      : field_(std::move(field)), dim_(dim), mul_(std::move(mul)) {
    detail::require(dim_ >= 1, "algebra dimension must be positive");
    if (mul_.dim0() != dim_ || mul_.dim1() != dim_ || mul_.dim2() != dim_)
      throw LoadError("mul tensor shape does not match dim " +
                      std::to_string(dim_));
    auto assoc = check_associativity(field_, dim_, mul_);
    if (!assoc.ok()) {
      auto [i, j, k] = assoc.violations.front();
      throw LoadError("mul tensor is not associative; first violating basis "
                      "triple (" +
                      std::to_string(i) + ", " + std::to_string(j) + ", " +
                      std::to_string(k) + "), " +
                      std::to_string(assoc.violations.size()) +
                      " violations total");
    }
    if (declared_unit) {
      detail::require(declared_unit->size() == dim_,
                      "unit vector has wrong dimension");
      Element<F> u(*declared_unit);
      if (!obeys_unit_law(u))
        throw LoadError("declared unit fails the two-sided unit law");
      unit_ = std::move(u);
    } else {
      unit_ = solve_for_unit();
    }
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Tensor3<K>& mul_tensor() const { return mul_; }
  const K& c(std::size_t i, std::size_t j, std::size_t k) const {
    return mul_.at(i, j, k);
  }

  Element<F> zero() const {
    return Element<F>(std::vector<K>(dim_, field_.zero()));
  }
  Element<F> basis(std::size_t i) const {
    detail::require(i < dim_, "basis index out of range");
    auto e = zero();
    e[i] = field_.one();
    return e;
  }
  Element<F> element(std::vector<K> coeff) const {
    detail::require(coeff.size() == dim_, "coefficient vector has wrong size");
    return Element<F>(std::move(coeff));
  }

  Element<F> mul(const Element<F>& a, const Element<F>& b) const {
    check(a);
    check(b);
    return Element<F>(detail::mul_basis(field_, mul_, a.coeffs(), b.coeffs()));
  }

  Element<F> commutator(const Element<F>& a, const Element<F>& b) const {
    return mul(a, b) - mul(b, a);
  }

  /// The two-sided unit, if one exists. Absence is a value, not an error.
  const std::optional<Element<F>>& unit() const { return unit_; }
  bool is_unital() const { return unit_.has_value(); }

  /// Central iff x e_i = e_i x for every basis vector; the witness is the
  /// first violating basis index.
  struct CentralityCheck {
    bool central = true;
    std::optional<std::size_t> witness;
  };
  CentralityCheck is_central(const Element<F>& x) const {
    check(x);
    for (std::size_t i = 0; i < dim_; ++i)
      if (!commutator(x, basis(i)).is_zero()) return {false, i};
    return {true, std::nullopt};
  }

  /// Re-runs the load-time associativity scan (always clean by construction;
  /// kept as a cross-check hook for property tests).
  AssociativityReport<F> associativity_report() const {
    return check_associativity(field_, dim_, mul_);
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.mul_ == b.mul_;
  }

 private:
  void check(const Element<F>& x) const {
    detail::require(x.dim() == dim_, "element does not belong to this algebra");
  }

  bool obeys_unit_law(const Element<F>& u) const {
    for (std::size_t i = 0; i < dim_; ++i) {
      auto e = basis(i);
      if (!(mul(u, e) == e) || !(mul(e, u) == e)) return false;
    }
    return true;
  }

  // u e_i = e_i and e_i u = e_i as a linear system in the coefficients of u.
  std::optional<Element<F>> solve_for_unit() const {
    Mat<K> M(2 * dim_ * dim_, dim_, field_.zero());
    std::vector<K> rhs(2 * dim_ * dim_, field_.zero());
    std::size_t row = 0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) {
        for (std::size_t j = 0; j < dim_; ++j) {
          M.at(row, j) = mul_.at(j, i, k);          // coeff of e_k in u e_i
          M.at(row + 1, j) = mul_.at(i, j, k);      // coeff of e_k in e_i u
        }
        if (i == k) rhs[row] = rhs[row + 1] = field_.one();
        row += 2;
      }
    auto sol = detail::solve_linear(field_, M, rhs);
    if (!sol) return std::nullopt;
    Element<F> u(*sol);
    // Two-sided units are unique, so any solution must satisfy the law.
    detail::internal_check(obeys_unit_law(u),
                           "solved unit fails the unit law");
    return u;
  }

  F field_;
  std::size_t dim_;
  Tensor3<K> mul_;
  std::optional<Element<F>> unit_;
};

}  // namespace rbforge
