#include "rnpv/model.hpp"

#include <cmath>
#include <string>

#include "rnpv/error.hpp"

namespace rnpv {

void LoanModel::validate() const {
  const int n = loan.term();
  if (market.horizon() < n) {
    throw ValidationError("market: persistence sequences shorter than the loan term (" +
                          std::to_string(market.horizon()) + " < " + std::to_string(n) + ")");
  }
  if (hazards.term() != n) {
    throw ValidationError("hazards: term " + std::to_string(hazards.term()) +
                          " does not match loan term " + std::to_string(n));
  }
  if (recovery.term() != n) {
    throw ValidationError("recovery: term " + std::to_string(recovery.term()) +
                          " does not match loan term " + std::to_string(n));
  }
}

double ValueMoments::sd() const {
  const double v = variance();
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace rnpv
