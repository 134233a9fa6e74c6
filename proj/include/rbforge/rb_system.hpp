#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rbforge/maps.hpp"

namespace rbforge {

// ---------------------------------------------------------------------------
// The star product a * b = R(a) b + a S(b), defined for any operator pair.
// ---------------------------------------------------------------------------

template <Field F>
Element<F> star_product(const Algebra<F>& A, const LinearOperator<F>& R,
                        const LinearOperator<F>& S, const Element<F>& a,
                        const Element<F>& b) {
  return A.mul(apply_linear(A, R, a), b) + A.mul(a, apply_linear(A, S, b));
}

// ---------------------------------------------------------------------------
// Per-axiom residuals of the two defining identities,
//   (r)  R(a) R(b) = R(R(a) b + a S(b)) + w(a (x) b)
//   (s)  S(a) S(b) = S(R(a) b + a S(b)) + w(a (x) b),
// evaluated on every basis pair. The full residual tensors are kept so that
// diagnostics can show exactly where and by how much an input fails.
// ---------------------------------------------------------------------------

template <Field F>
struct SystemCheckReport {
  BilinearMap<F> residual_r;
  BilinearMap<F> residual_s;
  std::vector<std::pair<std::size_t, std::size_t>> violations_r;
  std::vector<std::pair<std::size_t, std::size_t>> violations_s;

  bool pass() const { return violations_r.empty() && violations_s.empty(); }
};

// ---------------------------------------------------------------------------
// CurvedRBSystem: the bundle (A, R, S, w). The curvature is stored as given
// even though it is determined by (R, S); verification re-derives it and
// reports any inconsistency instead of silently repairing the input.
// Verification runs once at construction, so systems are immutable and the
// cached status is safe to share across threads.
// ---------------------------------------------------------------------------

template <Field F>
class CurvedRBSystem {
 public:
  using K = typename F::Scalar;

  CurvedRBSystem(Algebra<F> algebra, LinearOperator<F> R, LinearOperator<F> S,
                 BilinearMap<F> omega)
      : A_(std::move(algebra)),
        r_(std::move(R)),
        s_(std::move(S)),
        omega_(std::move(omega)) {
    const std::size_t n = A_.dim();
    detail::require(r_.coeff.rows() == n && r_.coeff.cols() == n &&
                        s_.coeff.rows() == n && s_.coeff.cols() == n &&
                        omega_.coeff.dim0() == n,
                    "system components do not match the algebra dimension");
    report_ = run_check();
  }

  const Algebra<F>& algebra() const { return A_; }
  const LinearOperator<F>& R() const { return r_; }
  const LinearOperator<F>& S() const { return s_; }
  const BilinearMap<F>& omega() const { return omega_; }

  /// Cached verification outcome, computed at construction.
  const SystemCheckReport<F>& check() const { return report_; }
  bool verified() const { return report_.pass(); }

  Element<F> star(const Element<F>& a, const Element<F>& b) const {
    return star_product(A_, r_, s_, a, b);
  }

 private:
  SystemCheckReport<F> run_check() const {
    SystemCheckReport<F> rep{zero_bilinear(A_), zero_bilinear(A_), {}, {}};
    const std::size_t n = A_.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto a = A_.basis(i), b = A_.basis(j);
        auto st = star(a, b);
        auto w = apply_bilinear(A_, omega_, a, b);
        auto res_r = A_.mul(apply_linear(A_, r_, a), apply_linear(A_, r_, b)) -
                     apply_linear(A_, r_, st) - w;
        auto res_s = A_.mul(apply_linear(A_, s_, a), apply_linear(A_, s_, b)) -
                     apply_linear(A_, s_, st) - w;
        for (std::size_t k = 0; k < n; ++k) {
          rep.residual_r.coeff.at(i, j, k) = res_r[k];
          rep.residual_s.coeff.at(i, j, k) = res_s[k];
        }
        if (!res_r.is_zero()) rep.violations_r.emplace_back(i, j);
        if (!res_s.is_zero()) rep.violations_s.emplace_back(i, j);
      }
    return rep;
  }

  Algebra<F> A_;
  LinearOperator<F> r_, s_;
  BilinearMap<F> omega_;
  SystemCheckReport<F> report_;
};

// ---------------------------------------------------------------------------
// Curvature balance:  a w(b (x) c) = w(a (x) b) c  on all basis triples.
// For a verified system this decides associativity of the star product.
// ---------------------------------------------------------------------------

template <Field F>
struct BalanceCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> witness;
};

template <Field F>
BalanceCheck<F> check_curvature_balance(const Algebra<F>& A,
                                        const BilinearMap<F>& w) {
  const std::size_t n = A.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        auto lhs = A.mul(A.basis(a), apply_bilinear(A, w, A.basis(b),
                                                    A.basis(c)));
        auto rhs = A.mul(apply_bilinear(A, w, A.basis(a), A.basis(b)),
                         A.basis(c));
        if (!(lhs == rhs))
          return {false, std::array<std::size_t, 3>{a, b, c}};
      }
  return {};
}

/// Associator of the star product on basis triples.
template <Field F>
struct StarAssociativityCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> witness;
};

template <Field F>
StarAssociativityCheck<F> check_star_associativity(
    const CurvedRBSystem<F>& sys) {
  const auto& A = sys.algebra();
  const std::size_t n = A.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        auto lhs = sys.star(sys.star(A.basis(a), A.basis(b)), A.basis(c));
        auto rhs = sys.star(A.basis(a), sys.star(A.basis(b), A.basis(c)));
        if (!(lhs == rhs))
          return {false, std::array<std::size_t, 3>{a, b, c}};
      }
  return {};
}

// ---------------------------------------------------------------------------
// kappa extraction for unital algebras with balanced curvature:
// kappa = w(1 (x) 1), and then w(a (x) b) = kappa a b with kappa central.
// The factored form is re-verified; failure would falsify the theorem, so
// it is an internal error.
// ---------------------------------------------------------------------------

template <Field F>
Element<F> extract_kappa(const Algebra<F>& A, const BilinearMap<F>& w) {
  if (!A.is_unital())
    throw PreconditionError("extract_kappa requires a unital algebra");
  if (!check_curvature_balance(A, w).ok)
    throw PreconditionError(
        "extract_kappa requires the curvature balance identity");
  const Element<F>& one = *A.unit();
  Element<F> kappa = apply_bilinear(A, w, one, one);
  detail::internal_check(A.is_central(kappa).central,
                         "kappa = w(1 (x) 1) must be central");
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j) {
      auto expect = A.mul(kappa, A.mul(A.basis(i), A.basis(j)));
      auto got = apply_bilinear(A, w, A.basis(i), A.basis(j));
      detail::internal_check(got == expect,
                             "curvature must factor as kappa * mul");
    }
  return kappa;
}

// ---------------------------------------------------------------------------
// Curvature derivation: solve each defining identity for w,
//   w_R(a (x) b) = R(a) R(b) - R(a * b),
//   w_S(a (x) b) = S(a) S(b) - S(a * b),
// and report delta = w_R - w_S. delta = 0 iff (A, R, S, w_R) is a curved
// Rota-Baxter system.
// ---------------------------------------------------------------------------

template <Field F>
struct CurvatureDefect {
  BilinearMap<F> omega_r;
  BilinearMap<F> omega_s;
  BilinearMap<F> delta;

  bool consistent() const { return delta.is_zero(); }
};

template <Field F>
CurvatureDefect<F> derive_curvature(const Algebra<F>& A,
                                    const LinearOperator<F>& R,
                                    const LinearOperator<F>& S) {
  CurvatureDefect<F> out{zero_bilinear(A), zero_bilinear(A), zero_bilinear(A)};
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto a = A.basis(i), b = A.basis(j);
      auto st = star_product(A, R, S, a, b);
      auto wr = A.mul(apply_linear(A, R, a), apply_linear(A, R, b)) -
                apply_linear(A, R, st);
      auto ws = A.mul(apply_linear(A, S, a), apply_linear(A, S, b)) -
                apply_linear(A, S, st);
      for (std::size_t k = 0; k < n; ++k) {
        out.omega_r.coeff.at(i, j, k) = wr[k];
        out.omega_s.coeff.at(i, j, k) = ws[k];
        out.delta.coeff.at(i, j, k) = wr[k] - ws[k];
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Constructors from weight-lambda Rota-Baxter operators. The weight identity
//   R(a) R(b) = R(R(a) b + a R(b) + lambda a b)
// is verified eagerly: these factories only ever emit valid systems.
// ---------------------------------------------------------------------------

template <Field F>
std::optional<std::pair<std::size_t, std::size_t>> weight_identity_defect(
    const Algebra<F>& A, const LinearOperator<F>& R,
    const typename F::Scalar& lambda) {
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto a = A.basis(i), b = A.basis(j);
      auto ra = apply_linear(A, R, a), rb = apply_linear(A, R, b);
      auto inner = A.mul(ra, b) + A.mul(a, rb) + A.mul(a, b).scaled(lambda);
      if (!(A.mul(ra, rb) == apply_linear(A, R, inner)))
        return std::make_pair(i, j);
    }
  return std::nullopt;
}

namespace detail {

template <Field F>
void require_weight_identity(const Algebra<F>& A, const LinearOperator<F>& R,
                             const typename F::Scalar& lambda) {
  if (auto bad = weight_identity_defect(A, R, lambda))
    throw PreconditionError(
        "operator fails the weight identity at basis pair (" +
        std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")");
}

}  // namespace detail

/// (A, R, R + lambda id, 0): flat system from a weight-lambda operator.
template <Field F>
CurvedRBSystem<F> from_weight_shift(const Algebra<F>& A,
                                    const LinearOperator<F>& R,
                                    const typename F::Scalar& lambda) {
  detail::require_weight_identity(A, R, lambda);
  CurvedRBSystem<F> sys(A, R, shifted_operator(A, R, lambda),
                        zero_bilinear(A));
  detail::internal_check(sys.verified(), "weight-shift system must verify");
  return sys;
}

/// (A, R, R, w) with w(a (x) b) = lambda R(ab): curved form of the same data.
template <Field F>
CurvedRBSystem<F> from_weight_curved(const Algebra<F>& A,
                                     const LinearOperator<F>& R,
                                     const typename F::Scalar& lambda) {
  detail::require_weight_identity(A, R, lambda);
  auto w = zero_bilinear(A);
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto v = apply_linear(A, R, A.mul(A.basis(i), A.basis(j)))
                   .scaled(lambda);
      for (std::size_t k = 0; k < n; ++k) w.coeff.at(i, j, k) = v[k];
    }
  CurvedRBSystem<F> sys(A, R, R, std::move(w));
  detail::internal_check(sys.verified(), "weight-curved system must verify");
  return sys;
}

// ---------------------------------------------------------------------------
// Construction from centralizing tensors r, s in (A (x) A)^A:
//   R(a) = sum r1 a r2,  S(a) = sum s1 a s2,
//   w(a (x) b) = - sum r1 a r2 s1 b s2 = -R(a) S(b).
// Every value of R, S, w lands in the centre; this is asserted, as is
// validity of the resulting system.
// ---------------------------------------------------------------------------

template <Field F>
LinearOperator<F> sandwich_operator(const Algebra<F>& A,
                                    const TensorSquareElement<F>& t) {
  auto op = zero_operator(A);
  const std::size_t n = A.dim();
  for (std::size_t col = 0; col < n; ++col) {
    auto image = A.zero();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto& tij = t.coeff.at(i, j);
        if (tij.is_zero()) continue;
        image += A.mul(A.mul(A.basis(i), A.basis(col)), A.basis(j))
                     .scaled(tij);
      }
    for (std::size_t k = 0; k < n; ++k) op.coeff.at(k, col) = image[k];
  }
  return op;
}

template <Field F>
CurvedRBSystem<F> from_centralizing_tensors(const Algebra<F>& A,
                                            const TensorSquareElement<F>& r,
                                            const TensorSquareElement<F>& s) {
  if (auto chk = is_centralizing(A, r); !chk.ok)
    throw PreconditionError(
        "r is not centralizing; witness basis index " +
        std::to_string(*chk.witness));
  if (auto chk = is_centralizing(A, s); !chk.ok)
    throw PreconditionError(
        "s is not centralizing; witness basis index " +
        std::to_string(*chk.witness));
  auto R = sandwich_operator(A, r);
  auto S = sandwich_operator(A, s);
  auto w = zero_bilinear(A);
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto v = -A.mul(apply_linear(A, R, A.basis(i)),
                      apply_linear(A, S, A.basis(j)));
      for (std::size_t k = 0; k < n; ++k) w.coeff.at(i, j, k) = v[k];
    }
  CurvedRBSystem<F> sys(A, std::move(R), std::move(S), std::move(w));
  detail::internal_check(sys.verified(),
                         "centralizing-tensor system must verify");
  for (std::size_t i = 0; i < n; ++i) {
    detail::internal_check(
        A.is_central(apply_linear(A, sys.R(), A.basis(i))).central,
        "R values must be central");
    detail::internal_check(
        A.is_central(apply_linear(A, sys.S(), A.basis(i))).central,
        "S values must be central");
    for (std::size_t j = 0; j < n; ++j)
      detail::internal_check(
          A.is_central(
               apply_bilinear(A, sys.omega(), A.basis(i), A.basis(j)))
              .central,
          "curvature values must be central");
  }
  return sys;
}

}  // namespace rbforge
