#include "bbm/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "bbm/constants.hpp"

namespace bbm {

LineRule radial_rule_from(double lo, double hi, const LineRule& ref, const QuadratureSpec& spec);

namespace {

std::string format_point(const Point& x) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (Eigen::Index i = 0; i < x.size(); ++i)
        os << (i ? ", " : "") << x(i);
    os << ')';
    return os.str();
}

// Leading coefficient of f(x, x + rω) ~ c r² from two samples, Richardson-extrapolated
// so the O(r³) term drops out.
double sampled_near_coefficient(const PairIntegrand& f, const Point& x, const Point& omega, double rho) {
    const double h = 0.5 * rho;
    const double q_full = f(x, Point(x + rho * omega)) / (rho * rho);
    const double q_half = f(x, Point(x + h * omega)) / (h * h);
    return std::max(0.0, 2.0 * q_half - q_full);
}

double evaluate(const PairIntegrand& f, const Domain& d, const RadialKernel& kernel, const QuadratureSpec& spec,
                const NearFieldCoefficient& near, std::size_t* node_count) {
    const TensorGrid grid(d, spec.outer_nodes, spec.outer_levels);
    const auto sphere = unit_sphere_nodes(d.dim(), spec.angular_nodes);
    const double eps = spec.epsilon * d.diameter();
    const bool correct = spec.near_field == NearFieldMode::taylor_correct;
    const LineRule ref = gauss_legendre(spec.radial_nodes);

    const auto terms = parallel_map<double>(grid.size(), spec.threads, [&](std::size_t i) {
        const Point& x = grid.point(i);
        const double diag = f(x, x);
        if (!std::isfinite(diag) || std::abs(diag) > 1e-13)
            throw IntegrationError("integrand does not vanish on the diagonal at x=" + format_point(x));
        double inner = 0.0;
        for (const SphereNode& node : sphere) {
            const Point& w = node.direction.unit();
            const double reach = boundary_distance(d, x, node.direction);
            double ray = 0.0;
            if (reach > eps) {
                const LineRule radial = radial_rule_from(eps, reach, ref, spec);
                for (std::size_t k = 0; k < radial.nodes.size(); ++k) {
                    const double r = radial.nodes[k];
                    const double v = f(x, Point(x + r * w));
                    if (!std::isfinite(v))
                        throw IntegrationError("non-finite integrand at x=" + format_point(x) + ", y=" +
                                               format_point(Point(x + r * w)));
                    ray += radial.weights[k] * v * kernel.density(r);
                }
            }
            if (correct) {
                const double rho = std::min(eps, reach);
                const double c = near ? near(x, w) : sampled_near_coefficient(f, x, w, rho);
                ray += c * kernel.near_moment(rho);
            }
            inner += node.weight * ray;
        }
        return grid.weight(i) * inner;
    });
    if (node_count)
        *node_count = grid.size() * sphere.size();
    const double total = pairwise_sum(terms);
    if (!std::isfinite(total))
        throw IntegrationError("double integral is not finite");
    return total;
}

} // namespace

void QuadratureSpec::validate() const {
    if (outer_nodes < 1 || angular_nodes < 1 || radial_nodes < 1 || outer_levels < 0)
        throw ConfigError("quadrature node counts must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("quadrature epsilon must lie in (0,1) (units of the domain diameter)");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ConfigError("quadrature ratio must lie in (0,1)");
}

void QuadratureSpec::validate(const Domain&) const {
    // epsilon is relative to diam(Ω), so ε·diam < diam reduces to ε < 1.
    validate();
}

QuadratureSpec QuadratureSpec::coarsened() const {
    QuadratureSpec c = *this;
    c.outer_nodes = std::max(2, outer_nodes / 2);
    c.angular_nodes = std::max(4, angular_nodes / 2);
    c.radial_nodes = std::max(2, radial_nodes / 2);
    c.estimate_error = false;
    return c;
}

QuadratureSpec QuadratureSpec::refined() const {
    QuadratureSpec c = *this;
    c.outer_nodes = 2 * outer_nodes;
    c.angular_nodes = 2 * angular_nodes;
    c.radial_nodes = 2 * radial_nodes;
    return c;
}

std::string to_string(RadialLayout layout) {
    return layout == RadialLayout::geometric ? "geometric" : "graded";
}

std::string to_string(NearFieldMode mode) {
    return mode == NearFieldMode::drop ? "drop" : "taylor-correct";
}

RadialLayout parse_radial_layout(const std::string& text) {
    if (text == "geometric")
        return RadialLayout::geometric;
    if (text == "graded")
        return RadialLayout::graded;
    throw ConfigError("unknown radial layout '" + text + "'");
}

NearFieldMode parse_near_field_mode(const std::string& text) {
    if (text == "drop")
        return NearFieldMode::drop;
    if (text == "taylor-correct")
        return NearFieldMode::taylor_correct;
    throw ConfigError("unknown near-field mode '" + text + "'");
}

RadialKernel RadialKernel::gagliardo(double s) {
    require_fractional_order(s);
    const double p = 2.0 - 2.0 * s;
    return {[s](double r) { return std::pow(r, -1.0 - 2.0 * s); },
            [p](double rho) { return std::pow(rho, p) / p; }};
}

LineRule radial_rule(double lo, double hi, const QuadratureSpec& spec) {
    return radial_rule_from(lo, hi, gauss_legendre(spec.radial_nodes), spec);
}

LineRule radial_rule_from(double lo, double hi, const LineRule& ref, const QuadratureSpec& spec) {
    LineRule out;
    if (!(hi > lo))
        return out;
    const int layers = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / std::log(1.0 / spec.ratio) - 1e-12)));
    out.nodes.reserve(static_cast<std::size_t>(layers) * ref.nodes.size());
    out.weights.reserve(out.nodes.capacity());
    if (spec.radial_layout == RadialLayout::geometric) {
        double top = hi;
        for (int l = 0; l < layers; ++l) {
            const double bottom = l + 1 == layers ? lo : std::max(lo, top * spec.ratio);
            const double c = 0.5 * (top + bottom), h = 0.5 * (top - bottom);
            for (std::size_t k = 0; k < ref.nodes.size(); ++k) {
                out.nodes.push_back(c + h * ref.nodes[k]);
                out.weights.push_back(h * ref.weights[k]);
            }
            top = bottom;
        }
        return out;
    }
    // graded: r = lo (hi/lo)^t, Gauss–Legendre panels in t
    const double span = std::log(hi / lo);
    const int panels = std::max(1, (layers + 2) / 3);
    for (int p = 0; p < panels; ++p) {
        const double t0 = static_cast<double>(p) / panels, t1 = static_cast<double>(p + 1) / panels;
        const double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
        for (std::size_t k = 0; k < ref.nodes.size(); ++k) {
            const double r = lo * std::exp(span * (c + h * ref.nodes[k]));
            out.nodes.push_back(r);
            out.weights.push_back(h * ref.weights[k] * span * r);
        }
    }
    return out;
}

IntegralResult double_integral_radial(const PairIntegrand& f, const Domain& d, const RadialKernel& kernel,
                                      const QuadratureSpec& spec, const NearFieldCoefficient& near) {
    spec.validate(d);
    IntegralResult res;
    res.value = evaluate(f, d, kernel, spec, near, &res.nodes);
    if (spec.estimate_error) {
        const double coarse = evaluate(f, d, kernel, spec.coarsened(), near, nullptr);
        res.error_estimate = std::abs(res.value - coarse);
    }
    return res;
}

IntegralResult double_integral_singular(const PairIntegrand& f, const Domain& d, double s, const QuadratureSpec& spec,
                                        const NearFieldCoefficient& near) {
    require_fractional_order(s);
    return double_integral_radial(f, d, RadialKernel::gagliardo(s), spec, near);
}

double near_field_correction(const ScalarField& u, const VectorPotential& A, const Point& x, double eps, double s) {
    require_fractional_order(s);
    if (!(eps > 0.0))
        throw DomainError("near_field_correction: eps must be positive");
    if (!u.has_gradient())
        throw ConfigError("near_field_correction: field '" + u.label + "' has no analytic gradient");
    const double g2 = covariant_gradient(u, A, x).squaredNorm();
    const double p = 2.0 - 2.0 * s;
    return g2 * dimensional_constants(u.dim).q * std::pow(eps, p) / p;
}

double tail_integral(const Domain& d, const Point& x, double s, int angular_nodes) {
    require_fractional_order(s);
    if (!d.contains(x))
        throw DomainError("tail_integral: x=" + format_point(x) + " is not interior (the tail diverges on the boundary)");
    double total = 0.0;
    for (const SphereNode& node : unit_sphere_nodes(d.dim(), angular_nodes))
        total += node.weight * std::pow(boundary_distance(d, x, node.direction), -2.0 * s);
    return total / (2.0 * s);
}

} // namespace bbm
