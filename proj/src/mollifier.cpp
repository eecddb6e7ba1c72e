#include "bbm/mollifier.hpp"

#include <cmath>
#include <limits>

#include "bbm/constants.hpp"
#include "bbm/geometry.hpp"
#include "bbm/types.hpp"

namespace bbm {

namespace {

// ∫_a^b g with `panels` equal Gauss–Legendre panels.
template <typename Fn>
double composite_gauss(double a, double b, int panels, const LineRule& ref, Fn&& g) {
    if (!(b > a))
        return 0.0;
    double total = 0.0;
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double c = lo + 0.5 * width, h = 0.5 * width;
        double part = 0.0;
        for (std::size_t k = 0; k < ref.nodes.size(); ++k)
            part += ref.weights[k] * g(c + h * ref.nodes[k]);
        total += h * part;
    }
    return total;
}

const LineRule& reference_rule() {
    static const LineRule rule = gauss_legendre(16);
    return rule;
}

} // namespace

double Mollifier::l1_norm() const {
    return sphere_area(dim) * moment(0.0, std::numeric_limits<double>::infinity(), 0);
}

double cutoff_profile(double r, double r0) {
    if (r <= r0)
        return 1.0;
    if (r >= 2.0 * r0)
        return 0.0;
    const double t = (r - r0) / r0;
    return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

MollifierFamily MollifierFamily::bbm(int dim, std::vector<double> s_sequence, double r_domain) {
    require_dimension(dim);
    if (!(r_domain > 0.0))
        throw ConfigError("bbm family: r_domain must be positive");
    for (std::size_t i = 0; i < s_sequence.size(); ++i) {
        require_fractional_order(s_sequence[i]);
        if (i > 0 && !(s_sequence[i] > s_sequence[i - 1]))
            throw ConfigError("bbm family: s sequence must be strictly increasing");
    }
    MollifierFamily f;
    f.kind_ = MollifierKind::bbm;
    f.dim_ = dim;
    f.r_domain_ = r_domain;
    f.parameters_ = std::move(s_sequence);
    const auto params = f.parameters_;
    f.profile_ = [params, dim, r_domain](std::size_t n, double r) {
        const double s = params.at(n);
        if (r >= 2.0 * r_domain)
            return 0.0;
        return 2.0 * (1.0 - s) * std::pow(r, -(dim + 2.0 * s - 2.0)) * cutoff_profile(r, r_domain);
    };
    f.moment_ = [params, r_domain](std::size_t n, double a, double b, int k) {
        const double s = params.at(n);
        const double p = 2.0 - 2.0 * s + k; // ρ_n r^{N-1+k} = 2(1-s) r^{p-1} ψ₀
        double total = 0.0;
        const double hi_core = std::min(b, r_domain);
        if (hi_core > a)
            total += 2.0 * (1.0 - s) * (std::pow(hi_core, p) - std::pow(a, p)) / p;
        const double lo_ramp = std::max(a, r_domain), hi_ramp = std::min(b, 2.0 * r_domain);
        total += composite_gauss(lo_ramp, hi_ramp, 4, reference_rule(), [&](double r) {
            return 2.0 * (1.0 - s) * std::pow(r, p - 1.0) * cutoff_profile(r, r_domain);
        });
        return total;
    };
    return f;
}

MollifierFamily MollifierFamily::gaussian(int dim, std::vector<int> indices) {
    require_dimension(dim);
    MollifierFamily f;
    f.kind_ = MollifierKind::gaussian;
    f.dim_ = dim;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 1 || (i > 0 && indices[i] <= indices[i - 1]))
            throw ConfigError("gaussian family: indices must be positive and strictly increasing");
        f.parameters_.push_back(1.0 / indices[i]);
    }
    const auto widths = f.parameters_;
    const double gamma_half = std::tgamma(0.5 * dim);
    f.profile_ = [widths, dim, gamma_half](std::size_t n, double r) {
        const double w = widths.at(n);
        return 2.0 / (gamma_half * std::pow(w, dim)) * std::exp(-(r * r) / (w * w));
    };
    const auto profile = f.profile_;
    f.moment_ = [widths, profile, dim](std::size_t n, double a, double b, int k) {
        const double w = widths.at(n);
        const double hi = std::min(b, 12.0 * w); // e^{-144} beyond
        return composite_gauss(a, hi, 24, reference_rule(),
                               [&](double r) { return profile(n, r) * std::pow(r, dim - 1 + k); });
    };
    return f;
}

MollifierFamily MollifierFamily::custom(int dim, std::vector<double> parameters,
                                        std::function<double(std::size_t, double)> profile,
                                        std::function<double(std::size_t, double, double, int)> moment) {
    require_dimension(dim);
    MollifierFamily f;
    f.kind_ = MollifierKind::custom;
    f.dim_ = dim;
    f.parameters_ = std::move(parameters);
    f.profile_ = std::move(profile);
    f.moment_ = std::move(moment);
    return f;
}

MollifierFamily MollifierFamily::zero(int dim, std::size_t count) {
    std::vector<double> params(count);
    for (std::size_t i = 0; i < count; ++i)
        params[i] = static_cast<double>(i + 1);
    return custom(dim, std::move(params), [](std::size_t, double) { return 0.0; },
                  [](std::size_t, double, double, int) { return 0.0; });
}

Mollifier MollifierFamily::member(std::size_t n) const {
    if (n >= size())
        throw ConfigError("mollifier index out of range");
    Mollifier m;
    m.dim = dim_;
    m.parameter = parameters_[n];
    m.profile = [profile = profile_, n](double r) { return profile(n, r); };
    m.moment = [moment = moment_, n](double a, double b, int k) { return moment(n, a, b, k); };
    return m;
}

std::string to_string(MollifierKind kind) {
    switch (kind) {
    case MollifierKind::bbm:
        return "bbm";
    case MollifierKind::gaussian:
        return "gaussian";
    case MollifierKind::custom:
        break;
    }
    return "custom";
}

std::vector<MollifierMoments> check_mollifier(const MollifierFamily& family, double delta) {
    if (!(delta > 0.0))
        throw DomainError("check_mollifier: delta must be positive");
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<MollifierMoments> rows;
    for (std::size_t n = 0; n < family.size(); ++n) {
        const Mollifier m = family.member(n);
        rows.push_back({m.parameter, m.moment(0.0, inf, 0), m.moment(delta, inf, 0), m.moment(0.0, delta, 1),
                        m.moment(0.0, delta, 2)});
    }
    return rows;
}

MollifierAssessment assess_mollifier(const std::vector<MollifierMoments>& rows, double final_tolerance) {
    MollifierAssessment out;
    if (rows.empty()) {
        out.violation = "normalization";
        return out;
    }
    const auto trend = [&](auto&& metric) {
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (metric(rows[i]) > metric(rows[i - 1]) + 1e-12)
                return false;
        return metric(rows.back()) <= final_tolerance;
    };
    out.normalization = trend([](const MollifierMoments& r) { return std::abs(r.mass - 1.0); });
    out.concentration = trend([](const MollifierMoments& r) { return r.tail; });
    // The moments on [0, δ] first grow while mass moves inside δ, so only the last step has to fall.
    const auto eventual = [&](auto&& metric) {
        if (rows.size() > 1 && metric(rows.back()) > metric(rows[rows.size() - 2]) + 1e-12)
            return false;
        return metric(rows.back()) <= final_tolerance;
    };
    out.moments = eventual([](const MollifierMoments& r) { return r.first_moment; }) &&
                  eventual([](const MollifierMoments& r) { return r.second_moment; });
    if (!out.normalization)
        out.violation = "normalization (mass does not tend to 1)";
    else if (!out.concentration)
        out.violation = "concentration (mass beyond delta does not tend to 0)";
    else if (!out.moments)
        out.violation = "moments (first/second moments on [0, delta] do not tend to 0)";
    return out;
}

void require_mollifier_conditions(const MollifierFamily& family, double delta) {
    const MollifierAssessment a = assess_mollifier(check_mollifier(family, delta));
    if (!a.ok())
        throw ConditionViolation("mollifier family violates " + a.violation);
}

} // namespace bbm
