#pragma once

#include <vector>

#include "bbm/fields.hpp"
#include "bbm/geometry.hpp"
#include "bbm/mollifier.hpp"
#include "bbm/quadrature.hpp"

namespace bbm {

struct FunctionalValue {
    double value = 0.0;
    IntegralResult diagnostics;
};

/// ∫_Ω∫_Ω |u(x) - e^{i(x-y)·A((x+y)/2)} u(y)|² / |x-y|^{N+2s} dx dy.
FunctionalValue magnetic_seminorm_sq(const ScalarField& u, const VectorPotential& A, const Domain& d, double s,
                                     const QuadratureSpec& spec);

/// ∫_Ω |∇u - iAu|².
FunctionalValue local_magnetic_energy(const ScalarField& u, const VectorPotential& A, const TensorGrid& grid,
                                      int threads = 1);

/// ∫_Ω |(∇u - iAu)·ω|².
double directional_energy(const ScalarField& u, const VectorPotential& A, const Direction& omega,
                          const TensorGrid& grid, int threads = 1);

/// ‖u‖²_{L²} over the grid.
double l2_norm_sq(const ScalarField& u, const TensorGrid& grid, int threads = 1);

/// The seminorm over R^N × R^N of a field vanishing outside Ω:
/// domain part + 2∫_Ω |u(x)|² ∫_{Ω^c} |x-y|^{-N-2s} dy dx.
FunctionalValue fullspace_seminorm_sq(const ScalarField& u, const VectorPotential& A, const Domain& d, double s,
                                      const QuadratureSpec& spec);

/// The Ω×Ω^c cross term of fullspace_seminorm_sq alone.
IntegralResult exterior_cross_term(const ScalarField& u, const Domain& d, double s, const QuadratureSpec& spec);

/// ∫_Ω∫_Ω |u(x) - phase·u(y)|² / |x-y|² ρ(|x-y|) dx dy.
FunctionalValue mollified_functional(const ScalarField& u, const VectorPotential& A, const Domain& d,
                                     const Mollifier& rho, const QuadratureSpec& spec);

/// ∫ |u(y+h) - e^{ih·A(y+h/2)} u(y)|² dy for compactly supported u; the grid box must cover
/// the support grown by |h|.
double translation_difference_sq(const ScalarField& u, const VectorPotential& A, const Point& h,
                                 const TensorGrid& grid, int threads = 1);

struct UniformBoundRow {
    double s;
    double fullspace;
    double ratio; ///< (1-s)·fullspace / (‖u‖² + energy)
};

struct UniformBoundReport {
    double norm_sq = 0.0; ///< ‖u‖²_{L²} + ∫|∇u - iAu|²
    double energy = 0.0;
    std::vector<UniformBoundRow> rows;

    double spread() const; ///< max ratio / min ratio
};

UniformBoundReport uniform_bound_check(const ScalarField& u, const VectorPotential& A, const Domain& d,
                                       const std::vector<double>& s_list, const QuadratureSpec& spec);

} // namespace bbm
