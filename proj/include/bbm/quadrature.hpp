#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "bbm/fields.hpp"
#include "bbm/geometry.hpp"
#include "bbm/summation.hpp"

namespace bbm {

enum class RadialLayout { geometric, graded };
enum class NearFieldMode { drop, taylor_correct };

/// Discretization of ∫_Ω∫_Ω f(x,y) k(|x-y|) dx dy in coordinates y = x + rω.
struct QuadratureSpec {
    int outer_nodes = 8;    ///< Gauss–Legendre nodes per outer panel
    int outer_levels = 10;  ///< geometric panel halvings toward each face
    int angular_nodes = 32; ///< angles (N=2) or azimuths (N=3)
    int radial_nodes = 8;   ///< Gauss–Legendre nodes per radial layer
    double epsilon = 1e-4;  ///< inner cutoff, relative to diam(Ω)
    RadialLayout radial_layout = RadialLayout::geometric;
    double ratio = 0.5;     ///< geometric layer ratio
    NearFieldMode near_field = NearFieldMode::taylor_correct;
    bool estimate_error = true;
    int threads = 1;        ///< execution only; results do not depend on it

    void validate() const;
    void validate(const Domain& d) const;
    /// Half the nodes in every direction (used for the error estimate).
    QuadratureSpec coarsened() const;
    /// Twice the nodes in every direction.
    QuadratureSpec refined() const;
};

std::string to_string(RadialLayout layout);
std::string to_string(NearFieldMode mode);
RadialLayout parse_radial_layout(const std::string& text);
NearFieldMode parse_near_field_mode(const std::string& text);

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0; ///< |fine - coarse|
    std::size_t nodes = 0;
};

/// Radial profile of a kernel k(|x-y|) in polar coordinates around x.
struct RadialKernel {
    /// r^{N-1} k(r)
    std::function<double(double)> density;
    /// ∫_0^ρ density(r) r² dr, the mass seen by an integrand growing like r².
    std::function<double(double)> near_moment;

    /// k(r) = r^{-N-2s}: density r^{-1-2s}, near moment ρ^{2-2s}/(2-2s).
    static RadialKernel gagliardo(double s);
};

using PairIntegrand = std::function<double(const Point& x, const Point& y)>;
/// c(x, ω) with f(x, x + rω) = c r² + O(r³).
using NearFieldCoefficient = std::function<double(const Point& x, const Point& omega)>;

/// Nodes and weights on [lo, hi] in the configured radial layout.
LineRule radial_rule(double lo, double hi, const QuadratureSpec& spec);

/// ∫_Ω∫_Ω f(x,y) k(|x-y|) dx dy for f ≥ 0 vanishing quadratically on the diagonal.
/// Without `near`, the taylor-correct mode estimates the leading coefficient from samples of f.
IntegralResult double_integral_radial(const PairIntegrand& f, const Domain& d, const RadialKernel& kernel,
                                      const QuadratureSpec& spec, const NearFieldCoefficient& near = {});

/// ∫_Ω∫_Ω f(x,y) / |x-y|^{N+2s} dx dy.
IntegralResult double_integral_singular(const PairIntegrand& f, const Domain& d, double s, const QuadratureSpec& spec,
                                        const NearFieldCoefficient& near = {});

/// |∇u(x) - iA(x)u(x)|² Q_N eps^{2-2s}/(2-2s): the leading mass of B(x, eps) in the seminorm's inner integral.
double near_field_correction(const ScalarField& u, const VectorPotential& A, const Point& x, double eps, double s);

/// ∫_{Ω^c} |x-y|^{-N-2s} dy = ∫_{S^{N-1}} R_x(ω)^{-2s}/(2s) dω for convex Ω.
double tail_integral(const Domain& d, const Point& x, double s, int angular_nodes);

/// Σ_i w_i fn(x_i) over a tensor grid with a schedule-independent reduction.
template <typename T, typename Fn>
T integrate_grid(const TensorGrid& grid, int threads, Fn&& fn) {
    const auto terms = parallel_map<T>(grid.size(), threads, [&](std::size_t i) { return grid.weight(i) * fn(grid.point(i)); });
    return pairwise_sum(terms);
}

} // namespace bbm
