#include "bbm/constants.hpp"

#include <cmath>
#include <numbers>

#include "bbm/types.hpp"

namespace bbm {

double sphere_area(int dim) {
    require_dimension(dim);
    return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double bbm_constant(int dim) {
    require_dimension(dim);
    return std::pow(std::numbers::pi, 0.5 * dim) / (dim * std::tgamma(0.5 * dim));
}

DimensionalConstants dimensional_constants(int dim) {
    const double k = bbm_constant(dim);
    return {dim, sphere_area(dim), 2.0 * k, k};
}

double fractional_constant(int dim, double s) {
    require_dimension(dim);
    require_fractional_order(s);
    return std::pow(4.0, s) * std::tgamma(0.5 * dim + s) * s * (1.0 - s) /
           (std::pow(std::numbers::pi, 0.5 * dim) * std::tgamma(2.0 - s));
}

double fractional_constant_limit(int dim) {
    require_dimension(dim);
    return 4.0 * dim * std::tgamma(0.5 * dim) / (2.0 * std::pow(std::numbers::pi, 0.5 * dim));
}

} // namespace bbm
