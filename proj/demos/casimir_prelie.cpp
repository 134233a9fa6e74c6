// Builds the Casimir-induced systems on M2(Q) and prints what they satisfy:
// R(a) = trace(a) I, S from the second tensor, w(a (x) b) = -R(a) S(b).

#include <iostream>

#include "rbforge/corpus.hpp"
#include "rbforge/prelie.hpp"

using namespace rbforge;

int main() {
  auto A = corpus::matrix2_rationals();
  auto cas = corpus::casimir_m2(A);
  std::cout << "Casimir tensor centralizes: "
            << (is_centralizing(A, cas).ok ? "yes" : "no") << '\n';

  auto sys = from_centralizing_tensors(A, cas, cas);
  std::cout << "system (r = s = Casimir) verifies: "
            << (sys.verified() ? "yes" : "no") << '\n';
  std::cout << "curvature symmetric: "
            << (is_symmetric(sys.omega()) ? "yes" : "no") << '\n';
  auto rep = check_prelie(sys);
  std::cout << "circle product is left pre-Lie: "
            << (rep.prelie ? "yes" : "no") << '\n';

  // with s = 0 instead, a o b = trace(a) b, which is visibly pre-Lie
  auto asym = from_centralizing_tensors(A, cas, zero_tensor_square(A));
  std::cout << "system (r = Casimir, s = 0) verifies: "
            << (asym.verified() ? "yes" : "no") << '\n';
  std::cout << "e11 o e12 = " << circle(asym, A.basis(0), A.basis(1)).str()
            << '\n';
  auto rep2 = check_prelie(asym);
  std::cout << "its circle product is left pre-Lie: "
            << (rep2.prelie ? "yes" : "no") << '\n';
  return rep.prelie && rep2.prelie ? 0 : 1;
}
