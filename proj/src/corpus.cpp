#include "bbm/corpus.hpp"

#include <cmath>
#include <sstream>

namespace bbm::corpus {

namespace {

constexpr Complex I(0.0, 1.0);

struct Bump {
    double value;
    double d1;
    double d2;
};

// exp(-1/(1-x²)) and its first two derivatives.
Bump bump_profile(double x) {
    const double q = 1.0 - x * x;
    if (q <= 0.0)
        return {0.0, 0.0, 0.0};
    const double u = std::exp(-1.0 / q);
    const double d1 = u * (-2.0 * x / (q * q));
    const double d2 = u * (4.0 * x * x / (q * q * q * q) - 2.0 / (q * q) - 8.0 * x * x / (q * q * q));
    return {u, d1, d2};
}

// Width of the shell next to |x| = 1 where the bump is below 1e-14.
double bump_margin() {
    const double q = 1.0 / std::log(1e14);
    return 1.0 - std::sqrt(1.0 - q);
}

Point filled(int dim, double v) {
    Point p(dim);
    p.setConstant(v);
    return p;
}

} // namespace

ScalarField gaussian(int dim) {
    require_dimension(dim);
    ScalarField f;
    f.dim = dim;
    f.label = "gauss" + std::to_string(dim) + "d";
    f.value = [](const Point& x) { return Complex(std::exp(-x.squaredNorm()), 0.0); };
    f.gradient = [](const Point& x) -> CVector { return (-2.0 * std::exp(-x.squaredNorm()) * x).cast<Complex>(); };
    f.hessian = [dim](const Point& x) -> CMatrix {
        const double u = std::exp(-x.squaredNorm());
        RMatrix h = 4.0 * x * x.transpose() - 2.0 * RMatrix::Identity(dim, dim);
        return (u * h).cast<Complex>();
    };
    return f;
}

ScalarField bump1d() {
    ScalarField f;
    f.dim = 1;
    f.label = "bump1d";
    f.value = [](const Point& x) { return Complex(bump_profile(x(0)).value, 0.0); };
    f.gradient = [](const Point& x) -> CVector {
        CVector g(1);
        g << bump_profile(x(0)).d1;
        return g;
    };
    f.hessian = [](const Point& x) -> CMatrix {
        CMatrix h(1, 1);
        h << bump_profile(x(0)).d2;
        return h;
    };
    f.support = Support::compact_in_domain;
    f.support_domain = Domain::interval(-1.0, 1.0);
    f.margin = bump_margin();
    return f;
}

ScalarField bump2d() {
    ScalarField f;
    f.dim = 2;
    f.label = "bump2d";
    f.value = [](const Point& x) { return Complex(bump_profile(x(0)).value * bump_profile(x(1)).value, 0.0); };
    f.gradient = [](const Point& x) -> CVector {
        const Bump a = bump_profile(x(0)), b = bump_profile(x(1));
        CVector g(2);
        g << a.d1 * b.value, a.value * b.d1;
        return g;
    };
    f.hessian = [](const Point& x) -> CMatrix {
        const Bump a = bump_profile(x(0)), b = bump_profile(x(1));
        CMatrix h(2, 2);
        h << a.d2 * b.value, a.d1 * b.d1, a.d1 * b.d1, a.value * b.d2;
        return h;
    };
    f.support = Support::compact_in_domain;
    f.support_domain = Domain::box(filled(2, 0.0), filled(2, 1.0));
    f.margin = bump_margin();
    return f;
}

ScalarField modulated_gaussian1d(double kappa) {
    ScalarField f;
    f.dim = 1;
    f.label = "pwgauss1d:kappa=" + std::to_string(kappa);
    f.value = [kappa](const Point& x) { return std::polar(std::exp(-x(0) * x(0)), kappa * x(0)); };
    f.gradient = [kappa](const Point& x) -> CVector {
        const Complex u = std::polar(std::exp(-x(0) * x(0)), kappa * x(0));
        CVector g(1);
        g << (I * kappa - 2.0 * x(0)) * u;
        return g;
    };
    f.hessian = [kappa](const Point& x) -> CMatrix {
        const Complex u = std::polar(std::exp(-x(0) * x(0)), kappa * x(0));
        const Complex m = I * kappa - 2.0 * x(0);
        CMatrix h(1, 1);
        h << (m * m - 2.0) * u;
        return h;
    };
    return f;
}

ScalarField plane_wave1d(double alpha) {
    ScalarField f;
    f.dim = 1;
    f.label = "planewave1d:alpha=" + std::to_string(alpha);
    f.value = [alpha](const Point& x) { return std::polar(1.0, alpha * x(0)); };
    f.gradient = [alpha](const Point& x) -> CVector {
        CVector g(1);
        g << I * alpha * std::polar(1.0, alpha * x(0));
        return g;
    };
    f.hessian = [alpha](const Point& x) -> CMatrix {
        CMatrix h(1, 1);
        h << -alpha * alpha * std::polar(1.0, alpha * x(0));
        return h;
    };
    return f;
}

ScalarField constant(int dim, Complex c) {
    require_dimension(dim);
    ScalarField f;
    f.dim = dim;
    f.label = "const" + std::to_string(dim) + "d";
    f.value = [c](const Point&) { return c; };
    f.gradient = [dim](const Point&) -> CVector { return CVector::Zero(dim); };
    f.hessian = [dim](const Point&) -> CMatrix { return CMatrix::Zero(dim, dim); };
    return f;
}

VectorPotential zero_potential(int dim) {
    return constant_potential(dim, 0.0);
}

VectorPotential constant_potential(int dim, double alpha) {
    require_dimension(dim);
    VectorPotential A;
    A.dim = dim;
    A.label = alpha == 0.0 ? "zero" : "const:alpha=" + std::to_string(alpha);
    A.value = [dim, alpha](const Point&) -> Point { return filled(dim, alpha); };
    A.divergence = [](const Point&) { return 0.0; };
    A.jacobian = [dim](const Point&) -> RMatrix { return RMatrix::Zero(dim, dim); };
    return A;
}

VectorPotential linear_potential1d(double alpha) {
    VectorPotential A;
    A.dim = 1;
    A.label = "linear:alpha=" + std::to_string(alpha);
    A.value = [alpha](const Point& x) -> Point { return alpha * x; };
    A.divergence = [alpha](const Point&) { return alpha; };
    A.jacobian = [alpha](const Point&) -> RMatrix { return RMatrix::Constant(1, 1, alpha); };
    return A;
}

VectorPotential landau_gauge(double beta) {
    VectorPotential A;
    A.dim = 2;
    A.label = "landau:beta=" + std::to_string(beta);
    A.value = [beta](const Point& x) -> Point {
        Point a(2);
        a << -0.5 * beta * x(1), 0.5 * beta * x(0);
        return a;
    };
    A.divergence = [](const Point&) { return 0.0; };
    A.jacobian = [beta](const Point&) -> RMatrix {
        RMatrix j(2, 2);
        j << 0.0, -0.5 * beta, 0.5 * beta, 0.0;
        return j;
    };
    return A;
}

double Label::get(const std::string& key, double fallback) const {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

Label parse_label(const std::string& text) {
    Label out;
    const auto colon = text.find(':');
    out.name = text.substr(0, colon);
    if (colon == std::string::npos)
        return out;
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("malformed label parameter '" + item + "' in '" + text + "'");
        try {
            out.params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("non-numeric label parameter '" + item + "' in '" + text + "'");
        }
    }
    return out;
}

ScalarField resolve_field(const std::string& label) {
    const Label l = parse_label(label);
    ScalarField f;
    if (l.name == "gauss1d")
        f = gaussian(1);
    else if (l.name == "gauss2d")
        f = gaussian(2);
    else if (l.name == "gauss3d")
        f = gaussian(3);
    else if (l.name == "bump1d")
        f = bump1d();
    else if (l.name == "bump2d")
        f = bump2d();
    else if (l.name == "pwgauss1d")
        f = modulated_gaussian1d(l.get("kappa", 1.0));
    else if (l.name == "planewave1d")
        f = plane_wave1d(l.get("alpha", 1.0));
    else if (l.name.size() == 7 && l.name.starts_with("const") && l.name.ends_with("d"))
        f = constant(l.name[5] - '0', Complex(l.get("value", 1.0), 0.0));
    else if (l.name.size() == 6 && l.name.starts_with("zero") && l.name.ends_with("d"))
        f = constant(l.name[4] - '0', Complex(0.0, 0.0));
    else
        throw ConfigError("unknown field label '" + label + "'");
    f.label = label;
    return f;
}

VectorPotential resolve_potential(const std::string& label, int dim) {
    const Label l = parse_label(label);
    VectorPotential A;
    if (l.name == "zero")
        A = zero_potential(dim);
    else if (l.name == "const")
        A = constant_potential(dim, l.get("alpha", 1.0));
    else if (l.name == "linear") {
        if (dim != 1)
            throw ConfigError("potential 'linear' is one-dimensional");
        A = linear_potential1d(l.get("alpha", 1.0));
    } else if (l.name == "landau") {
        if (dim != 2)
            throw ConfigError("potential 'landau' is two-dimensional");
        A = landau_gauge(l.get("beta", 1.0));
    } else {
        throw ConfigError("unknown potential label '" + label + "'");
    }
    A.label = label;
    return A;
}

} // namespace bbm::corpus
