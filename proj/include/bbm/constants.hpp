#pragma once

namespace bbm {

struct DimensionalConstants {
    int dim;
    double sphere_area; ///< |S^{N-1}|
    double q;           ///< ∫_{S^{N-1}} |ω·e|² = |S^{N-1}| / N
    double k;           ///< q / 2
};

DimensionalConstants dimensional_constants(int dim);

/// |S^{N-1}| = 2π^{N/2} / Γ(N/2).
double sphere_area(int dim);

/// K_N = (1/2)∫_{S^{N-1}} |ω·e|² dH^{N-1} = π^{N/2} / (N Γ(N/2)).
double bbm_constant(int dim);

/// Normalization of the fractional Laplacian, written without the pole of Γ(-s):
/// c(N,s) = 4^s Γ(N/2 + s) s (1 - s) / (π^{N/2} Γ(2 - s)).
double fractional_constant(int dim, double s);

/// lim_{s↗1} c(N,s)/(1-s) = 4NΓ(N/2) / (2π^{N/2}).
double fractional_constant_limit(int dim);

} // namespace bbm
