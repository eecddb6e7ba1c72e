#include "bbm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "bbm/constants.hpp"
#include "bbm/corpus.hpp"
#include "bbm/functionals.hpp"
#include "bbm/mollifier.hpp"
#include "bbm/operator.hpp"

namespace bbm {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json point_to_json(const Point& p) {
    json a = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i)
        a.push_back(p(i));
    return a;
}

Point point_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDim))
        throw ConfigError(std::string(what) + " must be an array of 1 to 3 numbers");
    Point p(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        p(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return p;
}

double number_or_nan(const json& j) {
    return j.is_null() ? kNaN : j.get<double>();
}

bool same_number(double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

void fill_errors(SweepRow& row) {
    row.abs_err = std::abs(row.scaled - row.target);
    row.rel_err = row.target != 0.0 ? row.abs_err / std::abs(row.target) : row.abs_err;
}

SweepRow failed_row(double param, const std::exception& e) {
    SweepRow row;
    row.param = param;
    row.value = row.scaled = row.abs_err = row.rel_err = row.error_estimate = kNaN;
    row.ok = false;
    row.failure = e.what();
    return row;
}

// Fits the three ok rows closest to the limit; `distance` maps a row parameter to t.
template <typename Distance>
void attach_extrapolation(SweepReport& report, Distance&& distance) {
    std::vector<std::pair<double, double>> pts;
    for (const SweepRow& r : report.rows)
        if (r.ok)
            pts.emplace_back(distance(r.param), r.scaled);
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (pts.size() < 3) {
        report.extrapolated = report.slope = report.residual = kNaN;
        return;
    }
    pts.resize(3);
    const Extrapolation e = extrapolate_limit(pts);
    report.extrapolated = e.limit;
    report.slope = e.slope;
    report.residual = e.residual;
}

json base_metadata(const SweepConfig& cfg) {
    json m;
    m["version"] = kVersion;
    m["config"] = to_json(cfg);
    m["dimension"] = cfg.domain.dim();
    m["bbm_constant"] = bbm_constant(cfg.domain.dim());
    return m;
}

struct Problem {
    ScalarField u;
    VectorPotential A;
};

Problem resolve(const SweepConfig& cfg) {
    Problem p{corpus::resolve_field(cfg.field), corpus::resolve_potential(cfg.potential, cfg.domain.dim())};
    if (p.u.dim != cfg.domain.dim())
        throw ConfigError("field '" + cfg.field + "' does not match the domain dimension");
    return p;
}

} // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::bbm_domain:
        return "bbm-domain";
    case ExperimentKind::bbm_fullspace:
        return "bbm-fullspace";
    case ExperimentKind::mollifier:
        return "mollifier";
    case ExperimentKind::lemma_translation:
        return "lemma-translation";
    case ExperimentKind::lemma_uniform:
        return "lemma-uniform";
    case ExperimentKind::operator_limit:
        return "operator-limit";
    }
    return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
    for (auto k : {ExperimentKind::bbm_domain, ExperimentKind::bbm_fullspace, ExperimentKind::mollifier,
                   ExperimentKind::lemma_translation, ExperimentKind::lemma_uniform, ExperimentKind::operator_limit})
        if (to_string(k) == text)
            return k;
    throw ConfigError("unknown experiment kind '" + text + "'");
}

void SweepConfig::validate() const {
    quadrature.validate(domain);
    const bool s_sweep = kind == ExperimentKind::bbm_domain || kind == ExperimentKind::bbm_fullspace ||
                         kind == ExperimentKind::lemma_uniform || kind == ExperimentKind::operator_limit;
    if (s_sweep) {
        for (std::size_t i = 0; i < s_list.size(); ++i) {
            if (!(s_list[i] > 0.0 && s_list[i] < 1.0))
                throw ConfigError("s_list entries must lie in (0,1)");
            if (i > 0 && !(s_list[i] > s_list[i - 1]))
                throw ConfigError("s_list must be strictly increasing");
        }
    }
    if (kind == ExperimentKind::lemma_translation) {
        for (double h : h_list)
            if (!(h > 0.0 && h <= 1.0))
                throw ConfigError("h_list entries must lie in (0,1]");
        if (direction && direction->size() != domain.dim())
            throw ConfigError("direction has the wrong dimension");
    }
    if (point && point->size() != domain.dim())
        throw ConfigError("point has the wrong dimension");
    if (family.kind != "gaussian" && family.kind != "bbm" && family.kind != "zero")
        throw ConfigError("unknown mollifier family '" + family.kind + "'");
    if (!(family.delta > 0.0))
        throw ConfigError("family delta must be positive");
    parse_report_format(format);
}

json domain_to_json(const Domain& d) {
    json j;
    j["kind"] = d.kind() == DomainKind::ball ? "ball" : (d.kind() == DomainKind::box ? "box" : "interval");
    j["center"] = point_to_json(d.center());
    j["extents"] = point_to_json(d.extents());
    return j;
}

Domain domain_from_json(const json& j) {
    const std::string kind = j.value("kind", "interval");
    const Point center = point_from_json(j.at("center"), "domain.center");
    const Point extents = point_from_json(j.at("extents"), "domain.extents");
    if (kind == "ball") {
        if (extents.size() != 1)
            throw ConfigError("ball extents must hold the single radius");
        return Domain::ball(center, extents(0));
    }
    if (kind != "interval" && kind != "box")
        throw ConfigError("unknown domain kind '" + kind + "'");
    if (extents.size() != center.size())
        throw ConfigError("domain center and extents differ in dimension");
    if (kind == "interval" && center.size() != 1)
        throw ConfigError("an interval is one-dimensional");
    return Domain::box(center, extents);
}

json quadrature_to_json(const QuadratureSpec& q) {
    json j;
    j["outer_nodes"] = q.outer_nodes;
    j["outer_levels"] = q.outer_levels;
    j["angular_nodes"] = q.angular_nodes;
    j["radial_nodes"] = q.radial_nodes;
    j["epsilon"] = q.epsilon;
    j["radial_layout"] = to_string(q.radial_layout);
    j["ratio"] = q.ratio;
    j["near_field"] = to_string(q.near_field);
    j["estimate_error"] = q.estimate_error;
    return j;
}

QuadratureSpec quadrature_from_json(const json& j) {
    QuadratureSpec q;
    q.outer_nodes = j.value("outer_nodes", q.outer_nodes);
    q.outer_levels = j.value("outer_levels", q.outer_levels);
    q.angular_nodes = j.value("angular_nodes", q.angular_nodes);
    q.radial_nodes = j.value("radial_nodes", q.radial_nodes);
    q.epsilon = j.value("epsilon", q.epsilon);
    q.radial_layout = parse_radial_layout(j.value("radial_layout", to_string(q.radial_layout)));
    q.ratio = j.value("ratio", q.ratio);
    q.near_field = parse_near_field_mode(j.value("near_field", to_string(q.near_field)));
    q.estimate_error = j.value("estimate_error", q.estimate_error);
    q.validate();
    return q;
}

SweepConfig parse_config(const json& j) {
    try {
        SweepConfig c;
        c.kind = parse_experiment_kind(j.at("kind").get<std::string>());
        c.field = j.value("field", c.field);
        c.potential = j.value("potential", c.potential);
        if (j.contains("domain"))
            c.domain = domain_from_json(j["domain"]);
        if (j.contains("s_list"))
            c.s_list = j["s_list"].get<std::vector<double>>();
        if (j.contains("family")) {
            const json& f = j["family"];
            c.family.kind = f.value("kind", c.family.kind);
            if (f.contains("indices"))
                c.family.indices = f["indices"].get<std::vector<int>>();
            if (f.contains("s_list"))
                c.family.s_list = f["s_list"].get<std::vector<double>>();
            c.family.r_domain = f.value("r_domain", c.family.r_domain);
            c.family.delta = f.value("delta", c.family.delta);
        }
        if (j.contains("h_list"))
            c.h_list = j["h_list"].get<std::vector<double>>();
        if (j.contains("direction"))
            c.direction = point_from_json(j["direction"], "direction");
        if (j.contains("point"))
            c.point = point_from_json(j["point"], "point");
        if (j.contains("quadrature"))
            c.quadrature = quadrature_from_json(j["quadrature"]);
        c.output = j.value("output", c.output);
        c.format = j.value("format", c.format);
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid sweep configuration: ") + e.what());
    }
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open configuration file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse '" + path + "': " + e.what());
    }
    return parse_config(j);
}

json to_json(const SweepConfig& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["field"] = c.field;
    j["potential"] = c.potential;
    j["domain"] = domain_to_json(c.domain);
    j["s_list"] = c.s_list;
    json f;
    f["kind"] = c.family.kind;
    f["indices"] = c.family.indices;
    f["s_list"] = c.family.s_list;
    f["r_domain"] = c.family.r_domain;
    f["delta"] = c.family.delta;
    j["family"] = f;
    j["h_list"] = c.h_list;
    if (c.direction)
        j["direction"] = point_to_json(*c.direction);
    if (c.point)
        j["point"] = point_to_json(*c.point);
    j["quadrature"] = quadrature_to_json(c.quadrature);
    j["format"] = c.format;
    return j;
}

bool SweepReport::has_failures() const {
    return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok; });
}

bool operator==(const SweepRow& a, const SweepRow& b) {
    return same_number(a.param, b.param) && same_number(a.value, b.value) && same_number(a.scaled, b.scaled) &&
           same_number(a.target, b.target) && same_number(a.abs_err, b.abs_err) &&
           same_number(a.rel_err, b.rel_err) && same_number(a.error_estimate, b.error_estimate) && a.ok == b.ok &&
           a.failure == b.failure;
}

bool operator==(const SweepReport& a, const SweepReport& b) {
    return a.kind == b.kind && a.rows == b.rows && same_number(a.extrapolated, b.extrapolated) &&
           same_number(a.slope, b.slope) && same_number(a.residual, b.residual) && a.metadata == b.metadata;
}

Extrapolation extrapolate_limit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3)
        throw ConfigError("extrapolate_limit needs at least three points");
    const double n = static_cast<double>(points.size());
    double mt = 0.0, mv = 0.0;
    for (const auto& [t, v] : points) {
        mt += t;
        mv += v;
    }
    mt /= n;
    mv /= n;
    double stt = 0.0, stv = 0.0;
    for (const auto& [t, v] : points) {
        stt += (t - mt) * (t - mt);
        stv += (t - mt) * (v - mv);
    }
    Extrapolation e;
    e.slope = stt > 0.0 ? stv / stt : 0.0;
    e.limit = mv - e.slope * mt;
    for (const auto& [t, v] : points)
        e.residual = std::max(e.residual, std::abs(e.limit + e.slope * t - v));
    return e;
}

SweepReport run_bbm_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const bool full = cfg.kind == ExperimentKind::bbm_fullspace;
    if (!full && cfg.kind != ExperimentKind::bbm_domain)
        throw ConfigError("run_bbm_sweep needs kind bbm-domain or bbm-fullspace");
    const Problem p = resolve(cfg);
    const QuadratureSpec& q = cfg.quadrature;
    const TensorGrid grid(cfg.domain, q.outer_nodes, q.outer_levels);
    const double energy = local_magnetic_energy(p.u, p.A, grid, q.threads).value;
    const double target = bbm_constant(cfg.domain.dim()) * energy;

    SweepReport report;
    report.kind = to_string(cfg.kind);
    json scaled_tail = json::array();
    std::size_t nodes = 0;
    for (double s : cfg.s_list) {
        try {
            SweepRow row;
            row.param = s;
            const FunctionalValue inner = magnetic_seminorm_sq(p.u, p.A, cfg.domain, s, q);
            double value = inner.value, err = inner.diagnostics.error_estimate;
            nodes = inner.diagnostics.nodes;
            if (full) {
                const IntegralResult cross = exterior_cross_term(p.u, cfg.domain, s, q);
                value += cross.value;
                err += cross.error_estimate;
                scaled_tail.push_back((1.0 - s) * cross.value);
            }
            row.value = value;
            row.scaled = (1.0 - s) * value;
            row.target = target;
            row.error_estimate = (1.0 - s) * err;
            fill_errors(row);
            report.rows.push_back(row);
        } catch (const IntegrationError& e) {
            report.rows.push_back(failed_row(s, e));
            report.rows.back().target = target;
            if (full)
                scaled_tail.push_back(nullptr);
        }
    }
    attach_extrapolation(report, [](double s) { return 1.0 - s; });
    report.metadata = base_metadata(cfg);
    report.metadata["local_energy"] = energy;
    report.metadata["target"] = target;
    report.metadata["outer_nodes_total"] = grid.size();
    report.metadata["nodes_per_level"] = nodes;
    if (full)
        report.metadata["scaled_tail"] = scaled_tail;
    return report;
}

namespace {

MollifierFamily build_family(const SweepConfig& cfg) {
    const int n = cfg.domain.dim();
    if (cfg.family.kind == "gaussian")
        return MollifierFamily::gaussian(n, cfg.family.indices);
    if (cfg.family.kind == "bbm") {
        const double r = cfg.family.r_domain > 0.0 ? cfg.family.r_domain : cfg.domain.diameter();
        return MollifierFamily::bbm(n, cfg.family.s_list, r);
    }
    if (cfg.family.kind == "zero")
        return MollifierFamily::zero(n, 5);
    throw ConfigError("unknown mollifier family '" + cfg.family.kind + "'");
}

} // namespace

SweepReport run_mollifier_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const Problem p = resolve(cfg);
    const MollifierFamily family = build_family(cfg);
    const auto moments = check_mollifier(family, cfg.family.delta);
    const MollifierAssessment verdict = assess_mollifier(moments);
    if (!verdict.ok())
        throw ConditionViolation("mollifier family violates " + verdict.violation);

    const QuadratureSpec& q = cfg.quadrature;
    const TensorGrid grid(cfg.domain, q.outer_nodes, q.outer_levels);
    const double energy = local_magnetic_energy(p.u, p.A, grid, q.threads).value;
    const double target = 2.0 * bbm_constant(cfg.domain.dim()) * energy;
    const bool by_index = family.kind() == MollifierKind::gaussian;

    SweepReport report;
    report.kind = to_string(cfg.kind);
    json mass = json::array();
    for (std::size_t n = 0; n < family.size(); ++n) {
        const double param = by_index ? 1.0 / family.parameters()[n] : family.parameters()[n];
        mass.push_back(moments[n].mass);
        try {
            const FunctionalValue v = mollified_functional(p.u, p.A, cfg.domain, family.member(n), q);
            SweepRow row;
            row.param = param;
            row.value = row.scaled = v.value;
            row.target = target;
            row.error_estimate = v.diagnostics.error_estimate;
            fill_errors(row);
            report.rows.push_back(row);
        } catch (const IntegrationError& e) {
            report.rows.push_back(failed_row(param, e));
            report.rows.back().target = target;
        }
    }
    if (by_index)
        attach_extrapolation(report, [](double n) { return 1.0 / n; });
    else
        attach_extrapolation(report, [](double s) { return 1.0 - s; });
    report.metadata = base_metadata(cfg);
    report.metadata["family"] = to_string(family.kind());
    report.metadata["family_mass"] = mass;
    report.metadata["local_energy"] = energy;
    report.metadata["target"] = target;
    return report;
}

SweepReport run_translation_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const Problem p = resolve(cfg);
    const int n = cfg.domain.dim();
    Point e1 = Point::Zero(n);
    e1(0) = 1.0;
    const Direction omega = Direction::normalized(cfg.direction.value_or(e1));
    const double hmax = cfg.h_list.empty() ? 0.0 : *std::max_element(cfg.h_list.begin(), cfg.h_list.end());
    const QuadratureSpec& q = cfg.quadrature;
    const TensorGrid grid(cfg.domain.dilated_box(hmax), q.outer_nodes, q.outer_levels);
    const double target = directional_energy(p.u, p.A, omega, grid, q.threads);

    SweepReport report;
    report.kind = to_string(cfg.kind);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double h : cfg.h_list) {
        SweepRow row;
        row.param = h;
        row.value = translation_difference_sq(p.u, p.A, Point(h * omega.unit()), grid, q.threads);
        row.scaled = row.value / (h * h);
        row.target = target;
        fill_errors(row);
        lo = std::min(lo, row.scaled);
        hi = std::max(hi, row.scaled);
        report.rows.push_back(row);
    }
    attach_extrapolation(report, [](double h) { return h; });
    report.metadata = base_metadata(cfg);
    report.metadata["directional_energy"] = target;
    report.metadata["ratio_spread"] = lo > 0.0 ? hi / lo : kNaN;
    return report;
}

SweepReport run_uniform_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const Problem p = resolve(cfg);
    const UniformBoundReport ub = uniform_bound_check(p.u, p.A, cfg.domain, cfg.s_list, cfg.quadrature);
    const double target = ub.norm_sq > 0.0 ? bbm_constant(cfg.domain.dim()) * ub.energy / ub.norm_sq : 0.0;
    SweepReport report;
    report.kind = to_string(cfg.kind);
    for (const UniformBoundRow& r : ub.rows) {
        SweepRow row;
        row.param = r.s;
        row.value = r.fullspace;
        row.scaled = r.ratio;
        row.target = target;
        fill_errors(row);
        report.rows.push_back(row);
    }
    attach_extrapolation(report, [](double s) { return 1.0 - s; });
    report.metadata = base_metadata(cfg);
    report.metadata["norm_sq"] = ub.norm_sq;
    report.metadata["local_energy"] = ub.energy;
    report.metadata["ratio_spread"] = ub.spread();
    return report;
}

SweepReport run_operator_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const Problem p = resolve(cfg);
    const Point x = cfg.point.value_or(cfg.domain.center());
    const auto samples = operator_limit_scan(p.u, p.A, x, cfg.s_list, cfg.quadrature, cfg.domain);
    SweepReport report;
    report.kind = to_string(cfg.kind);
    json imag = json::array();
    for (const OperatorSample& smp : samples) {
        SweepRow row;
        row.param = smp.s;
        row.value = row.scaled = smp.fractional.real();
        row.target = smp.local.real();
        row.abs_err = smp.discrepancy;
        row.rel_err = std::abs(smp.local) > 0.0 ? smp.discrepancy / std::abs(smp.local) : smp.discrepancy;
        imag.push_back(smp.fractional.imag());
        report.rows.push_back(row);
    }
    attach_extrapolation(report, [](double s) { return 1.0 - s; });
    report.metadata = base_metadata(cfg);
    report.metadata["point"] = point_to_json(x);
    report.metadata["fractional_imag"] = imag;
    report.metadata["local_imag"] = samples.empty() ? 0.0 : samples.front().local.imag();
    return report;
}

SweepReport run_sweep(const SweepConfig& cfg) {
    switch (cfg.kind) {
    case ExperimentKind::bbm_domain:
    case ExperimentKind::bbm_fullspace:
        return run_bbm_sweep(cfg);
    case ExperimentKind::mollifier:
        return run_mollifier_sweep(cfg);
    case ExperimentKind::lemma_translation:
        return run_translation_sweep(cfg);
    case ExperimentKind::lemma_uniform:
        return run_uniform_sweep(cfg);
    case ExperimentKind::operator_limit:
        return run_operator_sweep(cfg);
    }
    throw ConfigError("unknown experiment kind");
}

ReportFormat parse_report_format(const std::string& text) {
    if (text == "csv")
        return ReportFormat::csv;
    if (text == "json")
        return ReportFormat::json;
    throw ConfigError("unknown report format '" + text + "' (csv or json)");
}

json report_to_json(const SweepReport& r) {
    json j;
    j["kind"] = r.kind;
    json rows = json::array();
    for (const SweepRow& row : r.rows) {
        json o;
        o["param"] = row.param;
        o["value"] = row.value;
        o["scaled"] = row.scaled;
        o["target"] = row.target;
        o["abs_err"] = row.abs_err;
        o["rel_err"] = row.rel_err;
        o["error_estimate"] = row.error_estimate;
        o["ok"] = row.ok;
        o["failure"] = row.failure;
        rows.push_back(o);
    }
    j["rows"] = rows;
    j["extrapolated"] = r.extrapolated;
    j["slope"] = r.slope;
    j["residual"] = r.residual;
    j["metadata"] = r.metadata;
    return j;
}

SweepReport report_from_json(const json& j) {
    SweepReport r;
    r.kind = j.at("kind").get<std::string>();
    for (const json& o : j.at("rows")) {
        SweepRow row;
        row.param = number_or_nan(o.at("param"));
        row.value = number_or_nan(o.at("value"));
        row.scaled = number_or_nan(o.at("scaled"));
        row.target = number_or_nan(o.at("target"));
        row.abs_err = number_or_nan(o.at("abs_err"));
        row.rel_err = number_or_nan(o.at("rel_err"));
        row.error_estimate = number_or_nan(o.at("error_estimate"));
        row.ok = o.at("ok").get<bool>();
        row.failure = o.at("failure").get<std::string>();
        r.rows.push_back(row);
    }
    r.extrapolated = number_or_nan(j.at("extrapolated"));
    r.slope = number_or_nan(j.at("slope"));
    r.residual = number_or_nan(j.at("residual"));
    r.metadata = j.at("metadata");
    return r;
}

void write_report(const SweepReport& r, ReportFormat format, std::ostream& os) {
    if (format == ReportFormat::json) {
        os << report_to_json(r).dump(2) << '\n';
        return;
    }
    os << "param,value,scaled,target,abs_err,rel_err\n";
    char buf[64];
    for (const SweepRow& row : r.rows) {
        bool first = true;
        for (double v : {row.param, row.value, row.scaled, row.target, row.abs_err, row.rel_err}) {
            if (std::isnan(v))
                std::snprintf(buf, sizeof buf, "nan");
            else
                std::snprintf(buf, sizeof buf, "%.17g", v);
            os << (first ? "" : ",") << buf;
            first = false;
        }
        os << '\n';
    }
}

void emit_report(const SweepReport& r, ReportFormat format, const std::string& path) {
    if (path.empty() || path == "-") {
        write_report(r, format, std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open report file '" + path + "' for writing");
    write_report(r, format, out);
    out.flush();
    if (!out)
        throw Error("failed writing report file '" + path + "'");
}

} // namespace bbm
