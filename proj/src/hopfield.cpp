#include "polariton/hopfield.hpp"

namespace polariton {

template BasicPolaritonBasis<double> diagonalize_polaritons(const BasicSystemParams<double>&);
template BasicPolaritonBasis<long double> diagonalize_polaritons(const BasicSystemParams<long double>&);

} // namespace polariton
