#pragma once

#include <vector>

#include "bbm/fields.hpp"
#include "bbm/geometry.hpp"
#include "bbm/quadrature.hpp"

namespace bbm {

struct OperatorOptions {
    double far_factor = 20.0; ///< truncation radius in units of diam(reference domain)
    double decay_tolerance = 1e-10;
};

struct FractionalApplyResult {
    Complex value;
    /// c(N,s) · ½ L_A u(x) Q_N ε^{2-2s}/(2-2s): the even Taylor term of the excluded ball.
    /// Added to `value` in taylor-correct mode, only reported in drop mode.
    Complex pv_correction;
    double pv_bound = 0.0; ///< |pv_correction|
    Complex far_tail;      ///< c(N,s)·(far-field contribution)
};

/// c(N,s) · PV ∫ (u(x) - e^{i(x-y)·A((x+y)/2)} u(y)) / |x-y|^{N+2s} dy.
/// The reference domain fixes the length scale of ε and of the far truncation radius.
FractionalApplyResult fractional_magnetic_apply(const ScalarField& u, const VectorPotential& A, const Point& x,
                                                double s, const QuadratureSpec& spec, const Domain& reference,
                                                const OperatorOptions& options = {});

/// -(∇ - iA)²u = -Δu + 2iA·∇u + |A|²u + i u div A.
Complex local_magnetic_apply(const ScalarField& u, const VectorPotential& A, const Point& x);

struct OperatorSample {
    Point x;
    double s;
    Complex fractional;
    Complex local;
    double discrepancy; ///< |fractional - local|
};

std::vector<OperatorSample> operator_limit_scan(const ScalarField& u, const VectorPotential& A, const Point& x,
                                                const std::vector<double>& s_list, const QuadratureSpec& spec,
                                                const Domain& reference, const OperatorOptions& options = {});

} // namespace bbm
