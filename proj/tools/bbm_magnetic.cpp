// bbm-magnetic: command line front end for the magnetic nonlocal functionals.
//
// exit codes: 0 ok, 1 condition violation, 2 configuration/domain error, 3 integration failure

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bbm/constants.hpp"
#include "bbm/corpus.hpp"
#include "bbm/harness.hpp"
#include "bbm/mollifier.hpp"
#include "bbm/operator.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kCondition = 1, kConfig = 2, kIntegration = 3 };

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Writes `text` to path, or stdout for "" and "-".
void put(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw bbm::Error("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush())
        throw bbm::Error("failed writing '" + path + "'");
}

int cmd_constants(int dim, std::optional<double> s) {
    bbm::require_dimension(dim);
    const bbm::DimensionalConstants c = bbm::dimensional_constants(dim);
    json j;
    j["dim"] = dim;
    j["sphere_area"] = c.sphere_area;
    j["Q_N"] = c.q;
    j["K_N"] = c.k;
    j["fractional_constant_limit"] = bbm::fractional_constant_limit(dim);
    if (s) {
        j["s"] = *s;
        j["fractional_constant"] = bbm::fractional_constant(dim, *s);
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_sweep(const std::string& config, const std::string& out, const std::string& format, int threads) {
    bbm::SweepConfig cfg = bbm::load_config(config);
    if (!out.empty())
        cfg.output = out;
    if (!format.empty())
        cfg.format = format;
    if (threads > 0)
        cfg.quadrature.threads = threads;
    const bbm::ReportFormat f = bbm::parse_report_format(cfg.format);
    const bbm::SweepReport report = bbm::run_sweep(cfg);
    bbm::emit_report(report, f, cfg.output);
    for (const bbm::SweepRow& r : report.rows)
        if (!r.ok)
            std::cerr << "row " << fmt(r.param) << " failed: " << r.failure << '\n';
    return report.has_failures() ? kIntegration : kOk;
}

int cmd_operator(const std::string& field, const std::string& potential, int dim, const std::vector<double>& point,
                 const std::vector<double>& s_list, const std::string& out, const std::string& format, int threads) {
    bbm::require_dimension(dim);
    const bbm::ScalarField u = bbm::corpus::resolve_field(field);
    const bbm::VectorPotential A = bbm::corpus::resolve_potential(potential, dim);
    if (u.dim != dim)
        throw bbm::ConfigError("field '" + field + "' is not " + std::to_string(dim) + "-dimensional");
    if (static_cast<int>(point.size()) != dim)
        throw bbm::ConfigError("--point needs " + std::to_string(dim) + " coordinates");
    const bbm::ReportFormat f = bbm::parse_report_format(format);
    bbm::Point x(dim);
    for (int k = 0; k < dim; ++k)
        x(k) = point[k];
    bbm::QuadratureSpec spec;
    spec.threads = threads > 0 ? threads : 1;
    const bbm::Domain reference = bbm::Domain::box(bbm::Point::Zero(dim), bbm::Point::Ones(dim));
    const auto samples = bbm::operator_limit_scan(u, A, x, s_list, spec, reference);

    std::string text;
    if (f == bbm::ReportFormat::csv) {
        text = "s";
        for (int k = 0; k < dim; ++k)
            text += ",x" + std::to_string(k + 1);
        text += ",frac_re,frac_im,local_re,local_im,discrepancy\n";
        for (const bbm::OperatorSample& smp : samples) {
            text += fmt(smp.s);
            for (int k = 0; k < dim; ++k)
                text += "," + fmt(smp.x(k));
            text += "," + fmt(smp.fractional.real()) + "," + fmt(smp.fractional.imag()) + "," +
                    fmt(smp.local.real()) + "," + fmt(smp.local.imag()) + "," + fmt(smp.discrepancy) + "\n";
        }
    } else {
        json rows = json::array();
        for (const bbm::OperatorSample& smp : samples) {
            json r;
            r["s"] = smp.s;
            r["x"] = point;
            r["fractional"] = {smp.fractional.real(), smp.fractional.imag()};
            r["local"] = {smp.local.real(), smp.local.imag()};
            r["discrepancy"] = smp.discrepancy;
            rows.push_back(r);
        }
        json j;
        j["version"] = bbm::kVersion;
        j["field"] = field;
        j["potential"] = potential;
        j["quadrature"] = bbm::quadrature_to_json(spec);
        j["samples"] = rows;
        text = j.dump(2) + "\n";
    }
    put(text, out);
    return kOk;
}

int cmd_mollifier_check(const std::string& family, int dim, double delta, double r_domain) {
    bbm::require_dimension(dim);
    bbm::MollifierFamily fam = family == "bbm"        ? bbm::MollifierFamily::bbm(dim, {0.8, 0.9, 0.95, 0.99, 0.999}, r_domain)
                               : family == "gaussian" ? bbm::MollifierFamily::gaussian(dim, {4, 8, 16, 32, 64})
                               : family == "zero"     ? bbm::MollifierFamily::zero(dim, 5)
                                                      : throw bbm::ConfigError("unknown family '" + family + "'");
    const auto rows = bbm::check_mollifier(fam, delta);
    const bbm::MollifierAssessment a = bbm::assess_mollifier(rows);
    json j;
    j["family"] = family;
    j["dim"] = dim;
    j["delta"] = delta;
    json arr = json::array();
    for (const bbm::MollifierMoments& m : rows)
        arr.push_back({{"parameter", m.parameter},
                       {"mass", m.mass},
                       {"tail", m.tail},
                       {"first_moment", m.first_moment},
                       {"second_moment", m.second_moment}});
    j["rows"] = arr;
    j["normalization"] = a.normalization;
    j["concentration"] = a.concentration;
    j["moments"] = a.moments;
    j["violation"] = a.violation;
    std::cout << j.dump(2) << '\n';
    if (!a.ok()) {
        std::cerr << "condition violated: " << a.violation << '\n';
        return kCondition;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Magnetic fractional seminorms and their s -> 1 limits"};
    app.set_version_flag("--version", bbm::kVersion);
    app.require_subcommand(1);

    int dim = 1;
    std::optional<double> s;
    auto* constants = app.add_subcommand("constants", "Dimensional constants K_N, Q_N and c(N,s)");
    constants->add_option("--dim", dim, "Dimension N")->required()->check(CLI::Range(1, 3));
    constants->add_option("--s", s, "Fractional order for c(N,s)");

    std::string config, out, format;
    int threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Run the experiment described by a JSON config");
    sweep->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out, "Report path (default stdout)");
    sweep->add_option("--format", format, "csv or json");
    sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    std::string field = "gauss1d", potential = "zero";
    std::vector<double> point{0.0}, s_list{0.7, 0.8, 0.9, 0.95};
    std::string op_format = "csv";
    auto* op = app.add_subcommand("operator", "Fractional vs local magnetic operator at a point");
    op->add_option("--field", field, "Field label")->capture_default_str();
    op->add_option("--potential", potential, "Potential label")->capture_default_str();
    op->add_option("--dim", dim, "Dimension N")->check(CLI::Range(1, 3))->capture_default_str();
    op->add_option("--point", point, "Evaluation point, comma separated")->delimiter(',');
    op->add_option("--s-list", s_list, "Orders, comma separated")->delimiter(',');
    op->add_option("--out", out, "Output path (default stdout)");
    op->add_option("--format", op_format, "csv or json")->capture_default_str();
    op->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    std::string family;
    double delta = 0.1, r_domain = 2.0;
    auto* moll = app.add_subcommand("mollifier-check", "Normalization and concentration trends of a family");
    moll->add_option("--family", family, "bbm, gaussian or zero")->required();
    moll->add_option("--dim", dim, "Dimension N")->check(CLI::Range(1, 3))->capture_default_str();
    moll->add_option("--delta", delta, "Concentration radius")->capture_default_str();
    moll->add_option("--r-domain", r_domain, "Cutoff radius of the bbm family")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*constants)
            return cmd_constants(dim, s);
        if (*sweep)
            return cmd_sweep(config, out, format, threads);
        if (*op)
            return cmd_operator(field, potential, dim, point, s_list, out, op_format, threads);
        if (*moll)
            return cmd_mollifier_check(family, dim, delta, r_domain);
    } catch (const bbm::ConditionViolation& e) {
        std::cerr << "condition violated: " << e.what() << '\n';
        return kCondition;
    } catch (const bbm::IntegrationError& e) {
        std::cerr << "integration failure: " << e.what() << '\n';
        return kIntegration;
    } catch (const bbm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
    return kConfig;
}
