#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>

#include "rbforge/algebra.hpp"

namespace rbforge {

// ---------------------------------------------------------------------------
// Linear endomorphisms of the underlying space. Column-action convention,
// fixed globally: coeff(k, i) is the coefficient of e_k in the image of e_i.
// ---------------------------------------------------------------------------

template <Field F>
struct LinearOperator {
  using K = typename F::Scalar;
  Mat<K> coeff;

  friend bool operator==(const LinearOperator&, const LinearOperator&) =
      default;
};

template <Field F>
LinearOperator<F> zero_operator(const Algebra<F>& A) {
  return {Mat<typename F::Scalar>(A.dim(), A.dim(), A.field().zero())};
}

template <Field F>
LinearOperator<F> identity_operator(const Algebra<F>& A) {
  auto op = zero_operator(A);
  for (std::size_t i = 0; i < A.dim(); ++i)
    op.coeff.at(i, i) = A.field().one();
  return op;
}

template <Field F>
LinearOperator<F> operator_from_matrix(const Algebra<F>& A,
                                       Mat<typename F::Scalar> m) {
  detail::require(m.rows() == A.dim() && m.cols() == A.dim(),
                  "operator matrix must be dim x dim");
  return {std::move(m)};
}

/// R + lambda * id, the weight-shift companion operator.
template <Field F>
LinearOperator<F> shifted_operator(const Algebra<F>& A,
                                   const LinearOperator<F>& R,
                                   const typename F::Scalar& lambda) {
  auto out = R;
  for (std::size_t i = 0; i < A.dim(); ++i)
    out.coeff.at(i, i) += lambda;
  return out;
}

template <Field F>
Element<F> apply_linear(const Algebra<F>& A, const LinearOperator<F>& R,
                        const Element<F>& a) {
  detail::require(R.coeff.rows() == A.dim() && a.dim() == A.dim(),
                  "apply_linear: dimension mismatch");
  auto out = A.zero();
  for (std::size_t i = 0; i < A.dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t k = 0; k < A.dim(); ++k)
      out[k] += R.coeff.at(k, i) * a[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bilinear maps A (x) A -> A: coeff(i, j, k) is the coefficient of e_k in
// the image of e_i (x) e_j. Houses curvatures and candidate curvatures.
// ---------------------------------------------------------------------------

template <Field F>
struct BilinearMap {
  using K = typename F::Scalar;
  Tensor3<K> coeff;

  bool is_zero() const {
    for (const K& x : coeff.flat())
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const BilinearMap&, const BilinearMap&) = default;
};

template <Field F>
BilinearMap<F> zero_bilinear(const Algebra<F>& A) {
  return {Tensor3<typename F::Scalar>(A.dim(), A.dim(), A.dim(),
                                      A.field().zero())};
}

/// The multiplication itself, as a bilinear map.
template <Field F>
BilinearMap<F> mul_bilinear(const Algebra<F>& A) {
  return {A.mul_tensor()};
}

template <Field F>
BilinearMap<F> bilinear_from_tensor(const Algebra<F>& A,
                                    Tensor3<typename F::Scalar> t) {
  detail::require(t.dim0() == A.dim() && t.dim1() == A.dim() &&
                      t.dim2() == A.dim(),
                  "bilinear tensor must be dim x dim x dim");
  return {std::move(t)};
}

template <Field F>
BilinearMap<F> bilinear_difference(const BilinearMap<F>& a,
                                   const BilinearMap<F>& b) {
  detail::require(a.coeff.dim0() == b.coeff.dim0(),
                  "bilinear map dimension mismatch");
  auto out = a;
  for (std::size_t t = 0; t < out.coeff.flat().size(); ++t)
    out.coeff.flat()[t] -= b.coeff.flat()[t];
  return out;
}

template <Field F>
Element<F> apply_bilinear(const Algebra<F>& A, const BilinearMap<F>& w,
                          const Element<F>& a, const Element<F>& b) {
  detail::require(w.coeff.dim0() == A.dim() && a.dim() == A.dim() &&
                      b.dim() == A.dim(),
                  "apply_bilinear: dimension mismatch");
  return Element<F>(
      detail::mul_basis(A.field(), w.coeff, a.coeffs(), b.coeffs()));
}

template <Field F>
bool is_symmetric(const BilinearMap<F>& w) {
  const auto n = w.coeff.dim0();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(w.coeff.at(i, j, k) == w.coeff.at(j, i, k))) return false;
  return true;
}

/// A-bimodule map check for w, with the outer actions on A (x) A:
/// a.(x (x) y) = ax (x) y and (x (x) y).a = x (x) ya. So the conditions are
/// w(ax (x) y) = a w(x (x) y) and w(x (x) ya) = w(x (x) y) a on basis triples.
template <Field F>
struct BimoduleCheck {
  bool ok = true;
  // side: 0 = left action violated, 1 = right action violated
  struct Witness {
    int side;
    std::size_t a, x, y;
  };
  std::optional<Witness> witness;
};

template <Field F>
BimoduleCheck<F> is_bimodule_map(const Algebra<F>& A, const BilinearMap<F>& w) {
  const std::size_t n = A.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        auto ea = A.basis(a), ex = A.basis(x), ey = A.basis(y);
        auto left_lhs = apply_bilinear(A, w, A.mul(ea, ex), ey);
        auto left_rhs = A.mul(ea, apply_bilinear(A, w, ex, ey));
        if (!(left_lhs == left_rhs))
          return {false, typename BimoduleCheck<F>::Witness{0, a, x, y}};
        auto right_lhs = apply_bilinear(A, w, ex, A.mul(ey, ea));
        auto right_rhs = A.mul(apply_bilinear(A, w, ex, ey), ea);
        if (!(right_lhs == right_rhs))
          return {false, typename BimoduleCheck<F>::Witness{1, a, x, y}};
      }
  return {};
}

// ---------------------------------------------------------------------------
// Elements of A (x) A: coeff(i, j) is the coefficient of e_i (x) e_j.
// ---------------------------------------------------------------------------

template <Field F>
struct TensorSquareElement {
  using K = typename F::Scalar;
  Mat<K> coeff;

  friend bool operator==(const TensorSquareElement&,
                         const TensorSquareElement&) = default;
};

template <Field F>
TensorSquareElement<F> zero_tensor_square(const Algebra<F>& A) {
  return {Mat<typename F::Scalar>(A.dim(), A.dim(), A.field().zero())};
}

template <Field F>
TensorSquareElement<F> tensor_square_from_matrix(const Algebra<F>& A,
                                                 Mat<typename F::Scalar> m) {
  detail::require(m.rows() == A.dim() && m.cols() == A.dim(),
                  "tensor-square coefficients must be dim x dim");
  return {std::move(m)};
}

/// Centralizing check: sum_ij t(i,j) (a e_i) (x) e_j equals
/// sum_ij t(i,j) e_i (x) (e_j a) for every basis a. The comparison happens in
/// A (x) A coordinates; the witness is the first violating basis index.
template <Field F>
struct CentralizingCheck {
  bool ok = true;
  std::optional<std::size_t> witness;
};

template <Field F>
CentralizingCheck<F> is_centralizing(const Algebra<F>& A,
                                     const TensorSquareElement<F>& t) {
  using K = typename F::Scalar;
  const std::size_t n = A.dim();
  detail::require(t.coeff.rows() == n, "tensor-square dimension mismatch");
  for (std::size_t a = 0; a < n; ++a) {
    Mat<K> lhs(n, n, A.field().zero());
    Mat<K> rhs(n, n, A.field().zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const K& tij = t.coeff.at(i, j);
        if (tij.is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k) {
          lhs.at(k, j) += tij * A.c(a, i, k);  // (e_a e_i) (x) e_j
          rhs.at(i, k) += tij * A.c(j, a, k);  // e_i (x) (e_j e_a)
        }
      }
    if (!(lhs == rhs)) return {false, a};
  }
  return {};
}

}  // namespace rbforge
