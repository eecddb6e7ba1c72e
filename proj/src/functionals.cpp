#include "bbm/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "bbm/constants.hpp"

namespace bbm {

namespace {

PairIntegrand difference_integrand(const ScalarField& u, const VectorPotential& A) {
    return [&u, &A](const Point& x, const Point& y) { return magnetic_difference_sq(u, A, x, y); };
}

NearFieldCoefficient leading_coefficient(const ScalarField& u, const VectorPotential& A) {
    if (!u.has_gradient())
        return {};
    return [&u, &A](const Point& x, const Point& omega) {
        const CVector g = covariant_gradient(u, A, x);
        return std::norm(g.dot(omega.cast<Complex>()));
    };
}

void require_same_dim(const ScalarField& u, const VectorPotential& A, int dim) {
    if (u.dim != dim || A.dim != dim)
        throw ConfigError("field '" + u.label + "', potential '" + A.label + "' and domain differ in dimension");
}

void require_compact_in(const ScalarField& u, const Domain& d) {
    if (!u.is_compact() || !u.support_domain)
        throw DomainError("field '" + u.label + "' is not compactly supported in the domain");
    const Domain& supp = *u.support_domain;
    if ((supp.lower().array() < d.lower().array() - 1e-14).any() ||
        (supp.upper().array() > d.upper().array() + 1e-14).any())
        throw DomainError("support of field '" + u.label + "' is not contained in the domain");
}

} // namespace

FunctionalValue magnetic_seminorm_sq(const ScalarField& u, const VectorPotential& A, const Domain& d, double s,
                                     const QuadratureSpec& spec) {
    require_same_dim(u, A, d.dim());
    const IntegralResult r = double_integral_singular(difference_integrand(u, A), d, s, spec, leading_coefficient(u, A));
    return {r.value, r};
}

FunctionalValue local_magnetic_energy(const ScalarField& u, const VectorPotential& A, const TensorGrid& grid,
                                      int threads) {
    require_same_dim(u, A, grid.dim());
    if (!u.has_gradient())
        throw ConfigError("local_magnetic_energy: field '" + u.label + "' has no analytic gradient");
    const double v = integrate_grid<double>(grid, threads, [&](const Point& x) { return covariant_gradient(u, A, x).squaredNorm(); });
    return {v, IntegralResult{v, 0.0, grid.size()}};
}

double directional_energy(const ScalarField& u, const VectorPotential& A, const Direction& omega,
                          const TensorGrid& grid, int threads) {
    require_same_dim(u, A, grid.dim());
    const CVector w = omega.unit().cast<Complex>();
    return integrate_grid<double>(grid, threads, [&](const Point& x) { return std::norm(covariant_gradient(u, A, x).dot(w)); });
}

double l2_norm_sq(const ScalarField& u, const TensorGrid& grid, int threads) {
    return integrate_grid<double>(grid, threads, [&](const Point& x) { return std::norm(u(x)); });
}

IntegralResult exterior_cross_term(const ScalarField& u, const Domain& d, double s, const QuadratureSpec& spec) {
    require_fractional_order(s);
    require_compact_in(u, d);
    const auto cross = [&](const QuadratureSpec& q) {
        const TensorGrid grid(d, q.outer_nodes, q.outer_levels);
        return 2.0 * integrate_grid<double>(grid, q.threads, [&](const Point& x) {
                   const double m = std::norm(u(x));
                   return m == 0.0 ? 0.0 : m * tail_integral(d, x, s, q.angular_nodes);
               });
    };
    IntegralResult r;
    r.value = cross(spec);
    r.nodes = TensorGrid(d, spec.outer_nodes, spec.outer_levels).size();
    if (spec.estimate_error)
        r.error_estimate = std::abs(r.value - cross(spec.coarsened()));
    return r;
}

FunctionalValue fullspace_seminorm_sq(const ScalarField& u, const VectorPotential& A, const Domain& d, double s,
                                      const QuadratureSpec& spec) {
    require_compact_in(u, d);
    const FunctionalValue inner = magnetic_seminorm_sq(u, A, d, s, spec);
    const IntegralResult cross = exterior_cross_term(u, d, s, spec);
    IntegralResult diag = inner.diagnostics;
    diag.value = inner.value + cross.value;
    diag.error_estimate += cross.error_estimate;
    diag.nodes += cross.nodes;
    return {diag.value, diag};
}

FunctionalValue mollified_functional(const ScalarField& u, const VectorPotential& A, const Domain& d,
                                     const Mollifier& rho, const QuadratureSpec& spec) {
    require_same_dim(u, A, d.dim());
    if (rho.dim != d.dim())
        throw ConfigError("mollifier and domain differ in dimension");
    const int n = d.dim();
    RadialKernel kernel{[&rho, n](double r) { return rho(r) * std::pow(r, n - 3); },
                        [&rho](double r) { return rho.moment(0.0, r, 0); }};
    const IntegralResult r = double_integral_radial(difference_integrand(u, A), d, kernel, spec, leading_coefficient(u, A));
    return {r.value, r};
}

double translation_difference_sq(const ScalarField& u, const VectorPotential& A, const Point& h,
                                 const TensorGrid& grid, int threads) {
    require_same_dim(u, A, grid.dim());
    if (h.size() != grid.dim())
        throw ConfigError("translation vector has the wrong dimension");
    if (h.norm() > 1.0)
        throw DomainError("translation_difference_sq: |h| must not exceed 1");
    if (!u.is_compact() || !u.support_domain)
        throw DomainError("translation_difference_sq: field '" + u.label + "' is not compactly supported");
    const double reach = h.norm();
    const Domain& supp = *u.support_domain;
    if ((grid.lower().array() > supp.lower().array() - reach + 1e-14).any() ||
        (grid.upper().array() < supp.upper().array() + reach - 1e-14).any())
        throw DomainError("translation_difference_sq: grid does not cover the support grown by |h| (margin violation)");
    return integrate_grid<double>(grid, threads, [&](const Point& y) { return magnetic_difference_sq(u, A, Point(y + h), y); });
}

double UniformBoundReport::spread() const {
    if (rows.empty())
        return 1.0;
    double lo = rows.front().ratio, hi = lo;
    for (const auto& r : rows) {
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    return lo > 0.0 ? hi / lo : (hi == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
}

UniformBoundReport uniform_bound_check(const ScalarField& u, const VectorPotential& A, const Domain& d,
                                       const std::vector<double>& s_list, const QuadratureSpec& spec) {
    require_compact_in(u, d);
    const TensorGrid grid(d, spec.outer_nodes, spec.outer_levels);
    UniformBoundReport out;
    out.energy = local_magnetic_energy(u, A, grid, spec.threads).value;
    out.norm_sq = l2_norm_sq(u, grid, spec.threads) + out.energy;
    for (double s : s_list) {
        const double full = fullspace_seminorm_sq(u, A, d, s, spec).value;
        out.rows.push_back({s, full, out.norm_sq > 0.0 ? (1.0 - s) * full / out.norm_sq : 0.0});
    }
    return out;
}

} // namespace bbm
