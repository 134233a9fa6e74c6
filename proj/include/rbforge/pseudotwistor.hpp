#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>

#include "rbforge/rb_system.hpp"

namespace rbforge {

// ---------------------------------------------------------------------------
// Linear maps on tensor powers of A, in paired-index layout: the pair (i, j)
// maps to flat index i*n + j and the triple (i, j, k) to (i*n + j)*n + k.
// Same column-action convention as LinearOperator: coeff(out, in).
// ---------------------------------------------------------------------------

template <Field F>
struct TwoTensorMap {
  using K = typename F::Scalar;
  Mat<K> coeff;  // n^2 x n^2

  friend bool operator==(const TwoTensorMap&, const TwoTensorMap&) = default;
};

template <Field F>
struct ThreeTensorMap {
  using K = typename F::Scalar;
  Mat<K> coeff;  // n^3 x n^3

  friend bool operator==(const ThreeTensorMap&, const ThreeTensorMap&) =
      default;
};

template <Field F>
TwoTensorMap<F> zero_two_tensor_map(const Algebra<F>& A) {
  const std::size_t n2 = A.dim() * A.dim();
  return {Mat<typename F::Scalar>(n2, n2, A.field().zero())};
}

template <Field F>
TwoTensorMap<F> identity_two_tensor_map(const Algebra<F>& A) {
  auto t = zero_two_tensor_map(A);
  for (std::size_t i = 0; i < t.coeff.rows(); ++i)
    t.coeff.at(i, i) = A.field().one();
  return t;
}

// ---------------------------------------------------------------------------
// The twistor pair induced by a verified, balanced system:
//   T(a (x) b) = R(a) (x) b + a (x) S(b)
//   TT(a (x) b (x) c) = R(a) (x) R(b) (x) c + R(a) (x) b (x) S(c)
//                       + a (x) S(b) (x) S(c)
// ---------------------------------------------------------------------------

template <Field F>
struct TwistorPair {
  TwoTensorMap<F> T;
  ThreeTensorMap<F> companion;
};

template <Field F>
TwistorPair<F> twistor_from_system(const CurvedRBSystem<F>& sys) {
  if (!sys.verified())
    throw PreconditionError("twistor_from_system requires a verified system");
  if (!check_curvature_balance(sys.algebra(), sys.omega()).ok)
    throw PreconditionError(
        "twistor_from_system requires balanced curvature");
  const auto& A = sys.algebra();
  const auto& R = sys.R().coeff;
  const auto& S = sys.S().coeff;
  const std::size_t n = A.dim();
  const auto zero = A.field().zero();
  const auto one = A.field().one();
  auto delta = [&](std::size_t x, std::size_t y) {
    return x == y ? one : zero;
  };

  TwistorPair<F> out{zero_two_tensor_map(A),
                     {Mat<typename F::Scalar>(n * n * n, n * n * n, zero)}};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          out.T.coeff.at(k * n + l, i * n + j) =
              R.at(k, i) * delta(l, j) + delta(k, i) * S.at(l, j);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t h = 0; h < n; ++h)
              out.companion.coeff.at((k * n + l) * n + m,
                                     (i * n + j) * n + h) =
                  R.at(k, i) * R.at(l, j) * delta(m, h) +
                  R.at(k, i) * delta(l, j) * S.at(m, h) +
                  delta(k, i) * S.at(l, j) * S.at(m, h);
  return out;
}

// ---------------------------------------------------------------------------
// Diagram checks. Both squares of the bow-tie diagram are evaluated
// independently on every basis triple:
//   left:   T o (id (x) (mu o T))  =  (id (x) mu) o TT - id (x) w
//   right:  T o ((mu o T) (x) id)  =  (mu (x) id) o TT - w (x) id
// Residuals live in A (x) A per input triple.
// ---------------------------------------------------------------------------

template <Field F>
struct BowtieReport {
  using K = typename F::Scalar;
  // residual(outPair, inTriple), column per basis triple
  Mat<K> residual_left;
  Mat<K> residual_right;
  std::vector<std::array<std::size_t, 3>> violations_left;
  std::vector<std::array<std::size_t, 3>> violations_right;

  bool pass() const {
    return violations_left.empty() && violations_right.empty();
  }
};

template <Field F>
BowtieReport<F> check_bowtie(const Algebra<F>& A, const TwoTensorMap<F>& T,
                             const ThreeTensorMap<F>& companion,
                             const BilinearMap<F>& w) {
  using K = typename F::Scalar;
  const std::size_t n = A.dim();
  const std::size_t n2 = n * n, n3 = n * n * n;
  detail::require(T.coeff.rows() == n2 && companion.coeff.rows() == n3 &&
                      w.coeff.dim0() == n,
                  "check_bowtie: shape mismatch");
  const auto zero = A.field().zero();
  BowtieReport<F> rep{Mat<K>(n2, n3, zero), Mat<K>(n2, n3, zero), {}, {}};

  auto apply_T = [&](const std::vector<K>& v) {
    std::vector<K> out(n2, zero);
    for (std::size_t in = 0; in < n2; ++in) {
      if (v[in].is_zero()) continue;
      for (std::size_t o = 0; o < n2; ++o)
        out[o] += T.coeff.at(o, in) * v[in];
    }
    return out;
  };
  // mu o T on a basis pair, as an element of A
  auto mu_T = [&](std::size_t i, std::size_t j) {
    auto out = A.zero();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const K& t = T.coeff.at(k * n + l, i * n + j);
        if (t.is_zero()) continue;
        out += A.mul(A.basis(k), A.basis(l)).scaled(t);
      }
    return out;
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t tri = (i * n + j) * n + k;

        // left square
        auto prod = mu_T(j, k);  // (mu o T)(e_j (x) e_k)
        std::vector<K> vec(n2, zero);
        for (std::size_t t = 0; t < n; ++t) vec[i * n + t] = prod[t];
        auto lhs = apply_T(vec);
        std::vector<K> rhs(n2, zero);
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t m = 0; m < n; ++m)
            for (std::size_t h = 0; h < n; ++h) {
              const K& tt = companion.coeff.at((l * n + m) * n + h, tri);
              if (tt.is_zero()) continue;
              for (std::size_t t = 0; t < n; ++t)
                rhs[l * n + t] += tt * A.c(m, h, t);
            }
        auto wjk = apply_bilinear(A, w, A.basis(j), A.basis(k));
        for (std::size_t t = 0; t < n; ++t) rhs[i * n + t] -= wjk[t];
        bool left_zero = true;
        for (std::size_t o = 0; o < n2; ++o) {
          K res = lhs[o] - rhs[o];
          if (!res.is_zero()) left_zero = false;
          rep.residual_left.at(o, tri) = res;
        }
        if (!left_zero) rep.violations_left.push_back({i, j, k});

        // right square
        prod = mu_T(i, j);
        std::fill(vec.begin(), vec.end(), zero);
        for (std::size_t t = 0; t < n; ++t) vec[t * n + k] = prod[t];
        lhs = apply_T(vec);
        std::fill(rhs.begin(), rhs.end(), zero);
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t m = 0; m < n; ++m)
            for (std::size_t h = 0; h < n; ++h) {
              const K& tt = companion.coeff.at((l * n + m) * n + h, tri);
              if (tt.is_zero()) continue;
              for (std::size_t t = 0; t < n; ++t)
                rhs[t * n + h] += tt * A.c(l, m, t);
            }
        auto wij = apply_bilinear(A, w, A.basis(i), A.basis(j));
        for (std::size_t t = 0; t < n; ++t) rhs[t * n + k] -= wij[t];
        bool right_zero = true;
        for (std::size_t o = 0; o < n2; ++o) {
          K res = lhs[o] - rhs[o];
          if (!res.is_zero()) right_zero = false;
          rep.residual_right.at(o, tri) = res;
        }
        if (!right_zero) rep.violations_right.push_back({i, j, k});
      }
  return rep;
}

/// Commutativity of the curvature square mu o (id (x) w) = mu o (w (x) id),
/// decided by composing coefficient tensors into full maps A^(x)3 -> A.
/// Logically identical to check_curvature_balance; kept as an independent
/// code path so the two implementations cross-check each other.
template <Field F>
bool check_omega_square(const Algebra<F>& A, const BilinearMap<F>& w) {
  using K = typename F::Scalar;
  const std::size_t n = A.dim();
  const auto zero = A.field().zero();
  Mat<K> left(n, n * n * n, zero), right(n, n * n * n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t tri = (i * n + j) * n + k;
        for (std::size_t u = 0; u < n; ++u) {
          const K& wl = w.coeff.at(j, k, u);
          const K& wr = w.coeff.at(i, j, u);
          for (std::size_t t = 0; t < n; ++t) {
            if (!wl.is_zero()) left.at(t, tri) += wl * A.c(i, u, t);
            if (!wr.is_zero()) right.at(t, tri) += wr * A.c(u, k, t);
          }
        }
      }
  return left == right;
}

// ---------------------------------------------------------------------------
// The twisted product mu o T, with its associator report. For twistor pairs
// coming from a system this coincides with the star product.
// ---------------------------------------------------------------------------

template <Field F>
struct TwistedProduct {
  BilinearMap<F> product;
  bool associative = true;
  std::optional<std::array<std::size_t, 3>> witness;
};

template <Field F>
TwistedProduct<F> twisted_product(const Algebra<F>& A,
                                  const TwoTensorMap<F>& T) {
  const std::size_t n = A.dim();
  detail::require(T.coeff.rows() == n * n, "twisted_product: shape mismatch");
  TwistedProduct<F> out{zero_bilinear(A), true, std::nullopt};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto v = A.zero();
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const auto& t = T.coeff.at(k * n + l, i * n + j);
          if (t.is_zero()) continue;
          v += A.mul(A.basis(k), A.basis(l)).scaled(t);
        }
      for (std::size_t k = 0; k < n; ++k) out.product.coeff.at(i, j, k) = v[k];
    }
  for (std::size_t a = 0; a < n && out.associative; ++a)
    for (std::size_t b = 0; b < n && out.associative; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        auto lhs = apply_bilinear(
            A, out.product,
            apply_bilinear(A, out.product, A.basis(a), A.basis(b)),
            A.basis(c));
        auto rhs = apply_bilinear(
            A, out.product, A.basis(a),
            apply_bilinear(A, out.product, A.basis(b), A.basis(c)));
        if (!(lhs == rhs)) {
          out.associative = false;
          out.witness = {a, b, c};
          break;
        }
      }
  return out;
}

}  // namespace rbforge
