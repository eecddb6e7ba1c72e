#include "bbm/fields.hpp"

#include <algorithm>

namespace bbm {

namespace {
constexpr Complex I(0.0, 1.0);
}

CVector covariant_gradient(const ScalarField& u, const VectorPotential& A, const Point& x) {
    if (!u.has_gradient())
        throw ConfigError("field '" + u.label + "' has no analytic gradient");
    const Complex ux = u(x);
    CVector g = u.gradient(x);
    const Point a = A(x);
    for (Eigen::Index k = 0; k < g.size(); ++k)
        g(k) -= Complex(0.0, a(k)) * ux;
    return g;
}

std::pair<ScalarField, VectorPotential> gauge_transform(const ScalarField& u, const VectorPotential& A,
                                                        const GaugeFunction& g) {
    if (g.b.size() != u.dim || A.dim != u.dim)
        throw ConfigError("gauge_transform: dimension mismatch");
    ScalarField v = u;
    v.label = u.label + "*gauge";
    v.value = [u, g](const Point& x) { return std::polar(1.0, g(x)) * u(x); };
    if (u.has_gradient()) {
        v.gradient = [u, g](const Point& x) -> CVector {
            const CVector b = g.b.cast<Complex>();
            return std::polar(1.0, g(x)) * (u.gradient(x) + I * u(x) * b);
        };
    }
    if (u.has_hessian() && u.has_gradient()) {
        v.hessian = [u, g](const Point& x) -> CMatrix {
            const CVector b = g.b.cast<Complex>();
            const CVector du = u.gradient(x);
            const CMatrix cross = b * du.transpose() + du * b.transpose();
            return std::polar(1.0, g(x)) * (u.hessian(x) + I * cross - u(x) * (b * b.transpose()));
        };
    }

    VectorPotential B = A;
    B.label = A.label + "+grad(phi)";
    B.value = [A, g](const Point& x) -> Point { return A(x) + g.b; };
    return {std::move(v), std::move(B)};
}

ScalarField modulus_field(const ScalarField& u) {
    ScalarField m;
    m.dim = u.dim;
    m.value = [u](const Point& x) { return Complex(std::abs(u(x)), 0.0); };
    m.support = u.support;
    m.support_domain = u.support_domain;
    m.margin = u.margin;
    m.label = "|" + u.label + "|";
    return m;
}

ScalarField linear_combination(Complex a, const ScalarField& u, Complex b, const ScalarField& v) {
    if (u.dim != v.dim)
        throw ConfigError("linear_combination: dimension mismatch");
    ScalarField w;
    w.dim = u.dim;
    w.label = "lincomb(" + u.label + "," + v.label + ")";
    w.value = [=](const Point& x) { return a * u(x) + b * v(x); };
    if (u.has_gradient() && v.has_gradient())
        w.gradient = [=](const Point& x) -> CVector { return a * u.gradient(x) + b * v.gradient(x); };
    if (u.has_hessian() && v.has_hessian())
        w.hessian = [=](const Point& x) -> CMatrix { return a * u.hessian(x) + b * v.hessian(x); };
    if (u.is_compact() && v.is_compact() && u.support_domain && v.support_domain &&
        u.support_domain->lower() == v.support_domain->lower() && u.support_domain->upper() == v.support_domain->upper()) {
        w.support = Support::compact_in_domain;
        w.support_domain = u.support_domain;
        w.margin = std::min(u.margin, v.margin);
    }
    return w;
}

} // namespace bbm
