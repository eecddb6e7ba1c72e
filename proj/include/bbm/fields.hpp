#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "bbm/geometry.hpp"
#include "bbm/types.hpp"

namespace bbm {

enum class Support { unrestricted, compact_in_domain };

/// Analytic complex-valued function on R^N with optional first and second derivatives.
struct ScalarField {
    int dim = 1;
    std::function<Complex(const Point&)> value;
    std::function<CVector(const Point&)> gradient;
    std::function<CMatrix(const Point&)> hessian;
    Support support = Support::unrestricted;
    /// For compact fields: u vanishes outside this region...
    std::optional<Domain> support_domain;
    /// ...and |u| < 1e-14 within `margin` of its boundary.
    double margin = 0.0;
    std::string label;

    Complex operator()(const Point& x) const { return value(x); }
    bool has_gradient() const { return static_cast<bool>(gradient); }
    bool has_hessian() const { return static_cast<bool>(hessian); }
    bool is_compact() const { return support == Support::compact_in_domain; }
};

/// Real magnetic potential A: R^N -> R^N.
struct VectorPotential {
    int dim = 1;
    std::function<Point(const Point&)> value;
    std::function<double(const Point&)> divergence;
    std::function<RMatrix(const Point&)> jacobian;
    std::string label;

    Point operator()(const Point& x) const { return value(x); }
    bool has_divergence() const { return static_cast<bool>(divergence); }
};

/// Affine gauge φ(x) = b·x + c.
struct GaugeFunction {
    Point b;
    double c = 0.0;

    double operator()(const Point& x) const { return b.dot(x) + c; }
};

/// exp(i (x - y)·A((x + y)/2)).
template <typename DX, typename DY>
Complex midpoint_phase(const VectorPotential& A, const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
    const Point mid = 0.5 * (x + y);
    const double theta = (x - y).dot(A(mid));
    return std::polar(1.0, theta);
}

/// |u(x) - e^{i(x-y)·A((x+y)/2)} u(y)|², the numerator of every magnetic difference quotient.
template <typename DX, typename DY>
double magnetic_difference_sq(const ScalarField& u, const VectorPotential& A, const Eigen::MatrixBase<DX>& x,
                              const Eigen::MatrixBase<DY>& y) {
    return std::norm(u(x) - midpoint_phase(A, x, y) * u(y));
}

/// ∇u(x) - i A(x) u(x). Requires an analytic gradient.
CVector covariant_gradient(const ScalarField& u, const VectorPotential& A, const Point& x);

/// (e^{iφ} u, A + ∇φ).
std::pair<ScalarField, VectorPotential> gauge_transform(const ScalarField& u, const VectorPotential& A,
                                                        const GaugeFunction& g);

/// Pointwise |u|; carries no derivatives.
ScalarField modulus_field(const ScalarField& u);

/// a·u + b·v pointwise, derivatives combined where both operands have them.
ScalarField linear_combination(Complex a, const ScalarField& u, Complex b, const ScalarField& v);

} // namespace bbm
