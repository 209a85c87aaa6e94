#include "fracmal/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracmal {

namespace {

void check_step(double h) {
    if (!(h > 0.0)) throw std::domain_error("weight: step size must be positive");
}

[[noreturn]] void bad_index(const char* which, std::int64_t j, std::int64_t k) {
    throw std::domain_error(std::string(which) + " weight index out of range: j=" +
                            std::to_string(j) + ", k=" + std::to_string(k));
}

} // namespace

double predictor_weight(std::int64_t j, std::int64_t k, FractionalOrder order, double h) {
    check_step(h);
    if (j < 0 || j > k) bad_index("predictor", j, k);
    const double a = order.alpha();
    const double m = static_cast<double>(k - j);
    return std::pow(h, a) / a * (std::pow(m + 1.0, a) - std::pow(m, a));
}

double corrector_weight(std::int64_t j, std::int64_t k, FractionalOrder order, double h) {
    check_step(h);
    if (j < 0 || j > k + 1) bad_index("corrector", j, k);
    const double a = order.alpha();
    const double prefactor = std::pow(h, a) / (a * (a + 1.0));
    double bracket;
    if (j == 0) {
        const double kd = static_cast<double>(k);
        bracket = std::pow(kd, a + 1.0) - (kd - a) * std::pow(kd + 1.0, a);
    } else if (j <= k) {
        const double m = static_cast<double>(k - j);
        bracket = std::pow(m + 2.0, a + 1.0) + std::pow(m, a + 1.0) - 2.0 * std::pow(m + 1.0, a + 1.0);
    } else { // j == k+1
        bracket = 1.0;
    }
    return prefactor * bracket;
}

} // namespace fracmal
