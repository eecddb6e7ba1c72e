#include "bbm/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bbm/summation.hpp"

namespace bbm {

Domain::Domain(DomainKind kind, Point center, Point extents)
    : kind_(kind), center_(std::move(center)), extents_(std::move(extents)) {
    require_dimension(dim());
    if (extents_.size() != center_.size() && kind_ != DomainKind::ball)
        throw ConfigError("domain center and extents differ in dimension");
    for (Eigen::Index i = 0; i < extents_.size(); ++i)
        if (!(extents_(i) > 0.0) || !std::isfinite(extents_(i)))
            throw ConfigError("domain extents must be positive and finite");
}

Domain Domain::interval(double lo, double hi) {
    if (!(hi > lo))
        throw ConfigError("interval requires lo < hi");
    Point c(1), e(1);
    c << 0.5 * (lo + hi);
    e << 0.5 * (hi - lo);
    return Domain(DomainKind::interval, c, e);
}

Domain Domain::box(const Point& center, const Point& half_widths) {
    return Domain(center.size() == 1 ? DomainKind::interval : DomainKind::box, center, half_widths);
}

Domain Domain::ball(const Point& center, double radius) {
    Point e(1);
    e << radius;
    if (center.size() == 1) {
        // A 1-ball is an interval.
        return Domain(DomainKind::interval, center, e);
    }
    return Domain(DomainKind::ball, center, e);
}

double Domain::diameter() const {
    if (kind_ == DomainKind::ball)
        return 2.0 * radius();
    return 2.0 * extents_.norm();
}

double Domain::volume() const {
    if (kind_ == DomainKind::ball) {
        const double r = radius();
        return dim() == 2 ? std::numbers::pi * r * r : 4.0 / 3.0 * std::numbers::pi * r * r * r;
    }
    return (2.0 * extents_.array()).prod();
}

bool Domain::contains(const Point& x) const {
    if (x.size() != center_.size())
        return false;
    if (kind_ == DomainKind::ball)
        return (x - center_).norm() < radius();
    return ((x - center_).cwiseAbs().array() < extents_.array()).all();
}

Point Domain::lower() const {
    return kind_ == DomainKind::ball ? Point(center_.array() - radius()) : Point(center_ - extents_);
}

Point Domain::upper() const {
    return kind_ == DomainKind::ball ? Point(center_.array() + radius()) : Point(center_ + extents_);
}

Domain Domain::dilated_box(double margin) const {
    const Point half = 0.5 * (upper() - lower());
    return Domain::box(center_, Point(half.array() + margin));
}

Direction::Direction(const Point& v) : unit_(v) {
    require_dimension(static_cast<int>(v.size()));
    if (std::abs(v.norm() - 1.0) > 1e-14)
        throw DomainError("direction is not a unit vector");
}

Direction Direction::normalized(const Point& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw DomainError("cannot normalize a zero or non-finite vector");
    return Direction(Point(v / n), 0);
}

double boundary_distance(const Domain& d, const Point& x, const Direction& w) {
    if (w.dim() != d.dim())
        throw ConfigError("direction and domain differ in dimension");
    if (!d.contains(x))
        throw DomainError("boundary_distance: point is not strictly inside the domain");
    const Point& u = w.unit();
    if (d.kind() == DomainKind::ball) {
        const Point rel = x - d.center();
        const double b = u.dot(rel);
        const double c = rel.squaredNorm() - d.radius() * d.radius();
        return -b + std::sqrt(b * b - c);
    }
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d.dim(); ++i) {
        if (u(i) > 0.0)
            best = std::min(best, (d.center()(i) + d.extents()(i) - x(i)) / u(i));
        else if (u(i) < 0.0)
            best = std::min(best, (d.center()(i) - d.extents()(i) - x(i)) / u(i));
    }
    return best;
}

std::vector<SphereNode> unit_sphere_nodes(int dim, int count) {
    if (dim < 1 || dim > 3)
        throw ConfigError("unit_sphere_nodes: unsupported dimension " + std::to_string(dim));
    if (count < 1)
        throw ConfigError("unit_sphere_nodes: count must be positive");
    std::vector<SphereNode> out;
    if (dim == 1) {
        Point p(1);
        p << 1.0;
        out.push_back({Direction(p), 1.0});
        p << -1.0;
        out.push_back({Direction(p), 1.0});
        return out;
    }
    const double dphi = 2.0 * std::numbers::pi / count;
    if (dim == 2) {
        for (int k = 0; k < count; ++k) {
            const double phi = dphi * (k + 0.5);
            Point p(2);
            p << std::cos(phi), std::sin(phi);
            out.push_back({Direction::normalized(p), dphi});
        }
        return out;
    }
    const LineRule polar = gauss_legendre(std::max(1, count / 2));
    for (std::size_t i = 0; i < polar.nodes.size(); ++i) {
        const double ct = polar.nodes[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int k = 0; k < count; ++k) {
            const double phi = dphi * (k + 0.5);
            Point p(3);
            p << st * std::cos(phi), st * std::sin(phi), ct;
            out.push_back({Direction::normalized(p), polar.weights[i] * dphi});
        }
    }
    return out;
}

namespace {

// Legendre P_n(z) and P_n'(z) by the three-term recurrence.
std::pair<double, double> legendre(int n, double z) {
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (z * p1 - p0) / (z * z - 1.0)};
}

} // namespace

LineRule gauss_legendre(int count) {
    if (count < 1)
        throw ConfigError("gauss_legendre: count must be positive");
    if (count == 1)
        return LineRule{{0.0}, {2.0}};
    LineRule r;
    r.nodes.resize(count);
    r.weights.resize(count);
    for (int i = 0; i < (count + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(count, z);
            const double step = p / dp;
            z -= step;
            if (std::abs(step) < 1e-16)
                break;
        }
        const double dp = legendre(count, z).second;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.nodes[i] = -z;
        r.nodes[count - 1 - i] = z;
        r.weights[i] = w;
        r.weights[count - 1 - i] = w;
    }
    if (count % 2 == 1)
        r.nodes[count / 2] = 0.0;
    return r;
}

LineRule graded_axis_rule(double lo, double hi, int nodes_per_panel, int levels) {
    if (!(hi > lo) || nodes_per_panel < 1 || levels < 0)
        throw ConfigError("graded_axis_rule: invalid arguments");
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::vector<double> breaks;
    breaks.push_back(lo);
    for (int k = levels; k >= 1; --k)
        breaks.push_back(lo + half * std::ldexp(1.0, -k));
    breaks.push_back(mid);
    for (int k = 1; k <= levels; ++k)
        breaks.push_back(hi - half * std::ldexp(1.0, -k));
    breaks.push_back(hi);

    const LineRule ref = gauss_legendre(nodes_per_panel);
    LineRule out;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p], b = breaks[p + 1];
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int i = 0; i < nodes_per_panel; ++i) {
            out.nodes.push_back(c + h * ref.nodes[i]);
            out.weights.push_back(h * ref.weights[i]);
        }
    }
    return out;
}

TensorGrid::TensorGrid(const Domain& d, int nodes_per_panel, int levels) : dim_(d.dim()) {
    const Point lo = d.lower(), hi = d.upper();
    for (int i = 0; i < dim_; ++i)
        axes_.push_back(graded_axis_rule(lo(i), hi(i), nodes_per_panel, levels));
    build(d);
}

TensorGrid::TensorGrid(const Domain& d, std::vector<LineRule> axes) : dim_(d.dim()), axes_(std::move(axes)) {
    if (static_cast<int>(axes_.size()) != dim_)
        throw ConfigError("TensorGrid: one axis rule per dimension required");
    build(d);
}

void TensorGrid::build(const Domain& d) {
    lower_ = d.lower();
    upper_ = d.upper();
    std::vector<std::size_t> idx(dim_, 0);
    std::size_t total = 1;
    for (const auto& a : axes_)
        total *= a.nodes.size();
    points_.reserve(total);
    weights_.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        Point p(dim_);
        double w = 1.0;
        for (int k = dim_ - 1; k >= 0; --k) {
            const std::size_t n = axes_[k].nodes.size();
            const std::size_t j = rem % n;
            rem /= n;
            p(k) = axes_[k].nodes[j];
            w *= axes_[k].weights[j];
        }
        if (d.kind() == DomainKind::ball && !d.contains(p))
            continue;
        points_.push_back(p);
        weights_.push_back(w);
    }
}

double TensorGrid::total_weight() const {
    return pairwise_sum(weights_);
}

} // namespace bbm
