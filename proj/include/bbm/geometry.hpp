#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bbm/types.hpp"

namespace bbm {

enum class DomainKind { interval, box, ball };

/// Bounded convex region: an interval, an axis-aligned box or a ball.
/// For balls only extents()(0) is meaningful (the radius).
class Domain {
public:
    static Domain interval(double lo, double hi);
    static Domain box(const Point& center, const Point& half_widths);
    static Domain ball(const Point& center, double radius);

    DomainKind kind() const { return kind_; }
    int dim() const { return static_cast<int>(center_.size()); }
    const Point& center() const { return center_; }
    const Point& extents() const { return extents_; }
    double radius() const { return extents_(0); }

    double diameter() const;
    double volume() const;
    bool contains(const Point& x) const; ///< strict interior

    Point lower() const; ///< bounding-box corner
    Point upper() const;

    /// The bounding box grown by `margin` on every side.
    Domain dilated_box(double margin) const;

private:
    Domain(DomainKind kind, Point center, Point extents);

    DomainKind kind_;
    Point center_;
    Point extents_;
};

/// Unit vector in R^N.
class Direction {
public:
    /// Checked: throws DomainError unless |v| = 1 within 1e-14.
    explicit Direction(const Point& v);
    static Direction normalized(const Point& v);

    const Point& unit() const { return unit_; }
    int dim() const { return static_cast<int>(unit_.size()); }
    Direction operator-() const { return Direction(Point(-unit_), 0); }

private:
    Direction(Point v, int) : unit_(std::move(v)) {}
    Point unit_;
};

/// Distance from the interior point x to ∂Ω along w.
double boundary_distance(const Domain& d, const Point& x, const Direction& w);

struct SphereNode {
    Direction direction;
    double weight;
};

/// Quadrature on S^{N-1}. N=1: {±1}; N=2: `count` uniform angles; N=3: Gauss–Legendre
/// in cos θ (count/2 nodes) times `count` uniform azimuths. Weights sum to |S^{N-1}|.
std::vector<SphereNode> unit_sphere_nodes(int dim, int count);

/// Gauss–Legendre rule on [-1, 1].
struct LineRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
LineRule gauss_legendre(int count);

/// Composite Gauss–Legendre on [lo, hi], panels halving geometrically toward both ends
/// (`levels` halvings each side). levels = 0 gives two equal panels.
LineRule graded_axis_rule(double lo, double hi, int nodes_per_panel, int levels);

/// Tensor-product rule over a domain's bounding box; points outside a ball are masked out.
class TensorGrid {
public:
    TensorGrid(const Domain& d, int nodes_per_panel, int levels);
    TensorGrid(const Domain& d, std::vector<LineRule> axes);

    int dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const Point& point(std::size_t i) const { return points_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<LineRule>& axes() const { return axes_; }

    double total_weight() const;
    /// Bounding box the rule was built on.
    const Point& lower() const { return lower_; }
    const Point& upper() const { return upper_; }

private:
    void build(const Domain& d);

    int dim_;
    std::vector<LineRule> axes_;
    std::vector<Point> points_;
    std::vector<double> weights_;
    Point lower_;
    Point upper_;
};

} // namespace bbm
