// A weight-1 Rota-Baxter operator (R = -id on Q) packaged both ways: as the
// flat system (R, R + id, 0) and as the curved system (R, R, -mu), then run
// through the twistor construction.

#include <iostream>

#include "rbforge/corpus.hpp"
#include "rbforge/pseudotwistor.hpp"

using namespace rbforge;

int main() {
  auto A = corpus::dim1_unital(QField{});
  auto R = identity_operator(A);
  R.coeff.at(0, 0) = -A.field().one();

  auto flat = from_weight_shift(A, R, A.field().one());
  std::cout << "flat system (R, R+id, 0) verifies: "
            << (flat.verified() ? "yes" : "no") << '\n';

  auto curved = from_weight_curved(A, R, A.field().one());
  std::cout << "curved system (R, R, -mu) verifies: "
            << (curved.verified() ? "yes" : "no") << '\n';
  std::cout << "curvature balanced: "
            << (check_curvature_balance(A, curved.omega()).ok ? "yes" : "no")
            << '\n';

  auto tw = twistor_from_system(curved);
  std::cout << "T(a (x) b) = " << tw.T.coeff.at(0, 0).str()
            << " a (x) b,  companion = " << tw.companion.coeff.at(0, 0).str()
            << " id\n";
  auto bowtie = check_bowtie(A, tw.T, tw.companion, curved.omega());
  std::cout << "bow-tie diagram commutes: " << (bowtie.pass() ? "yes" : "no")
            << '\n';
  auto twisted = twisted_product(A, tw.T);
  std::cout << "mu o T associative: " << (twisted.associative ? "yes" : "no")
            << '\n';
  return flat.verified() && curved.verified() && bowtie.pass() &&
                 twisted.associative
             ? 0
             : 1;
}
