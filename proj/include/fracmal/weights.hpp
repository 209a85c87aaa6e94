#pragma once

#include <cstdint>

#include "fracmal/types.hpp"

namespace fracmal {

/// Predictor weight b_{j,k+1} = (h^a/a) * [(k-j+1)^a - (k-j)^a] for 0 <= j <= k.
/// Strictly positive everywhere on its domain.
double predictor_weight(std::int64_t j, std::int64_t k, FractionalOrder order, double h);

/// Corrector weight a_{j,k+1}, piecewise in j for 0 <= j <= k+1:
///   j = 0       : k^{a+1} - (k-a)(k+1)^a
///   1 <= j <= k : (k-j+2)^{a+1} + (k-j)^{a+1} - 2(k-j+1)^{a+1}
///   j = k+1     : 1
/// all scaled by h^a / (a(a+1)). Strictly positive everywhere on its domain.
double corrector_weight(std::int64_t j, std::int64_t k, FractionalOrder order, double h);

} // namespace fracmal
