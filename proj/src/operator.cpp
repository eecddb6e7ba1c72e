#include "bbm/operator.hpp"

#include <cmath>

#include "bbm/constants.hpp"

namespace bbm {

Complex local_magnetic_apply(const ScalarField& u, const VectorPotential& A, const Point& x) {
    if (u.dim != A.dim || x.size() != u.dim)
        throw ConfigError("local_magnetic_apply: dimension mismatch");
    if (!u.has_gradient() || !u.has_hessian())
        throw ConfigError("local_magnetic_apply: field '" + u.label + "' needs an analytic gradient and hessian");
    if (!A.has_divergence())
        throw ConfigError("local_magnetic_apply: potential '" + A.label + "' has no divergence");
    constexpr Complex I(0.0, 1.0);
    const Complex ux = u(x);
    const Point a = A(x);
    const Complex laplacian = u.hessian(x).trace();
    const Complex drift = a.cast<Complex>().dot(u.gradient(x));
    return -laplacian + 2.0 * I * drift + a.squaredNorm() * ux + I * ux * A.divergence(x);
}

FractionalApplyResult fractional_magnetic_apply(const ScalarField& u, const VectorPotential& A, const Point& x,
                                                double s, const QuadratureSpec& spec, const Domain& reference,
                                                const OperatorOptions& options) {
    require_fractional_order(s);
    spec.validate(reference);
    if (u.dim != A.dim || x.size() != u.dim || reference.dim() != u.dim)
        throw ConfigError("fractional_magnetic_apply: dimension mismatch");

    const int n = u.dim;
    const double eps = spec.epsilon * reference.diameter();
    const double far = options.far_factor * reference.diameter();
    const auto sphere = unit_sphere_nodes(n, spec.angular_nodes);
    const LineRule radial = radial_rule(eps, far, spec);
    const Complex ux = u(x);

    // Annulus ε < |y - x| < R, symmetrized over ±ω so the odd part cancels pointwise.
    double scale = std::abs(ux);
    Complex annulus = 0.0;
    for (const SphereNode& node : sphere) {
        const Point& w = node.direction.unit();
        Complex ray = 0.0;
        for (std::size_t k = 0; k < radial.nodes.size(); ++k) {
            const double r = radial.nodes[k];
            const Point yp = x + r * w, ym = x - r * w;
            const Complex vp = u(yp), vm = u(ym);
            scale = std::max({scale, std::abs(vp), std::abs(vm)});
            const Complex num = ux - 0.5 * (midpoint_phase(A, x, yp) * vp + midpoint_phase(A, x, ym) * vm);
            ray += radial.weights[k] * num * std::pow(r, -1.0 - 2.0 * s);
        }
        annulus += node.weight * ray;
    }
    if (!std::isfinite(annulus.real()) || !std::isfinite(annulus.imag()))
        throw IntegrationError("fractional_magnetic_apply: non-finite annulus integral");

    // Far field |y - x| > R: either u(y) has decayed (the integrand is u(x)) or the
    // numerator vanishes identically (pure gauge); anything else is refused.
    bool decayed = true, cancelled = true;
    const double tol = options.decay_tolerance * std::max(scale, 1e-300);
    for (const SphereNode& node : sphere) {
        for (double m : {1.0, 2.0, 4.0}) {
            const Point y = x + m * far * node.direction.unit();
            const Complex transported = midpoint_phase(A, x, y) * u(y);
            decayed = decayed && std::abs(transported) <= tol;
            cancelled = cancelled && std::abs(ux - transported) <= tol;
        }
    }
    Complex tail = 0.0;
    if (decayed)
        tail = ux * sphere_area(n) * std::pow(far, -2.0 * s) / (2.0 * s);
    else if (!cancelled)
        throw IntegrationError("fractional_magnetic_apply: field '" + u.label +
                               "' does not decay at the far radius; far-field truncation refused");

    const double c = fractional_constant(n, s);
    FractionalApplyResult out;
    out.far_tail = c * tail;
    if (u.has_gradient() && u.has_hessian() && A.has_divergence()) {
        const double p = 2.0 - 2.0 * s;
        out.pv_correction = c * 0.5 * local_magnetic_apply(u, A, x) * dimensional_constants(n).q * std::pow(eps, p) / p;
        out.pv_bound = std::abs(out.pv_correction);
    } else if (spec.near_field == NearFieldMode::taylor_correct) {
        throw ConfigError("fractional_magnetic_apply: taylor-correct needs an analytic hessian and div A");
    } else {
        out.pv_bound = std::nan("");
    }
    out.value = c * (annulus + tail);
    if (spec.near_field == NearFieldMode::taylor_correct)
        out.value += out.pv_correction;
    return out;
}

std::vector<OperatorSample> operator_limit_scan(const ScalarField& u, const VectorPotential& A, const Point& x,
                                                const std::vector<double>& s_list, const QuadratureSpec& spec,
                                                const Domain& reference, const OperatorOptions& options) {
    const Complex local = local_magnetic_apply(u, A, x);
    std::vector<OperatorSample> out;
    for (double s : s_list) {
        const Complex frac = fractional_magnetic_apply(u, A, x, s, spec, reference, options).value;
        out.push_back({x, s, frac, local, std::abs(frac - local)});
    }
    return out;
}

} // namespace bbm
