#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "rbforge/rb_system.hpp"

namespace rbforge {

/// The circle product a o b = R(a) b - b S(a).
template <Field F>
Element<F> circle(const CurvedRBSystem<F>& sys, const Element<F>& a,
                  const Element<F>& b) {
  const auto& A = sys.algebra();
  return A.mul(apply_linear(A, sys.R(), a), b) -
         A.mul(b, apply_linear(A, sys.S(), a));
}

/// Left pre-Lie defect (a o b - b o a) o c - a o (b o c) + b o (a o c);
/// zero iff the pre-Lie identity holds at (a, b, c). The defect is
/// multilinear, so vanishing on basis triples decides the identity.
template <Field F>
Element<F> prelie_defect(const CurvedRBSystem<F>& sys, const Element<F>& a,
                         const Element<F>& b, const Element<F>& c) {
  auto lhs = circle(sys, circle(sys, a, b) - circle(sys, b, a), c);
  auto rhs = circle(sys, a, circle(sys, b, c)) -
             circle(sys, b, circle(sys, a, c));
  return lhs - rhs;
}

/// Is w(a (x) b) - w(b (x) a) central for all basis pairs? The witness is
/// (c, i, j) with [e_c, w(e_i (x) e_j) - w(e_j (x) e_i)] != 0.
template <Field F>
struct AntisymCentralCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> witness;  // (c, i, j)
};

template <Field F>
AntisymCentralCheck<F> antisym_curvature_central(const CurvedRBSystem<F>& sys) {
  const auto& A = sys.algebra();
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto anti = apply_bilinear(A, sys.omega(), A.basis(i), A.basis(j)) -
                  apply_bilinear(A, sys.omega(), A.basis(j), A.basis(i));
      if (anti.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (!A.commutator(A.basis(c), anti).is_zero())
          return {false, std::array<std::size_t, 3>{c, i, j}};
    }
  return {};
}

// ---------------------------------------------------------------------------
// Full pre-Lie verdict. Both sides of the characterization are evaluated:
// the defect on all basis triples, and the centrality of the antisymmetrized
// curvature. For a verified system they must agree; a disagreement would
// falsify the characterization (or reveal a bug) and is a hard error.
// ---------------------------------------------------------------------------

template <Field F>
struct PrelieReport {
  bool prelie = true;
  std::optional<std::array<std::size_t, 3>> defect_witness;
  AntisymCentralCheck<F> antisym;
};

template <Field F>
PrelieReport<F> check_prelie(const CurvedRBSystem<F>& sys) {
  if (!sys.verified())
    throw PreconditionError("check_prelie requires a verified system");
  const auto& A = sys.algebra();
  const std::size_t n = A.dim();
  PrelieReport<F> rep;
  for (std::size_t a = 0; a < n && rep.prelie; ++a)
    for (std::size_t b = 0; b < n && rep.prelie; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (!prelie_defect(sys, A.basis(a), A.basis(b), A.basis(c))
                 .is_zero()) {
          rep.prelie = false;
          rep.defect_witness = {a, b, c};
          break;
        }
  rep.antisym = antisym_curvature_central(sys);
  detail::internal_check(
      rep.prelie == rep.antisym.ok,
      "pre-Lie defect and antisymmetrized-curvature centrality disagree");
  return rep;
}

}  // namespace rbforge
