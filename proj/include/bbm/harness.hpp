#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bbm/geometry.hpp"
#include "bbm/quadrature.hpp"

namespace bbm {

inline constexpr const char* kVersion = "bbm-magnetic 0.1.0";

enum class ExperimentKind { bbm_domain, bbm_fullspace, mollifier, lemma_translation, lemma_uniform, operator_limit };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& text);

struct FamilyConfig {
    std::string kind = "gaussian";          ///< gaussian | bbm | zero
    std::vector<int> indices{4, 8, 16, 32, 64};
    std::vector<double> s_list{0.8, 0.9, 0.95, 0.99, 0.999};
    double r_domain = 0.0;                   ///< 0 selects diam(Ω)
    double delta = 0.1;
};

struct SweepConfig {
    ExperimentKind kind = ExperimentKind::bbm_domain;
    std::string field = "gauss1d";
    std::string potential = "zero";
    Domain domain = Domain::interval(-1.0, 1.0);
    std::vector<double> s_list{0.8, 0.9, 0.95, 0.99};
    FamilyConfig family;
    std::vector<double> h_list{0.1, 0.05, 0.025, 0.0125};
    std::optional<Point> direction; ///< lemma-translation; defaults to e₁
    std::optional<Point> point;     ///< operator-limit; defaults to the domain center
    QuadratureSpec quadrature;
    std::string output;             ///< empty or "-" writes to stdout
    std::string format = "csv";

    void validate() const;
};

SweepConfig parse_config(const nlohmann::ordered_json& j);
SweepConfig load_config(const std::string& path);
/// Full echo of the configuration including defaults, without the execution-only
/// settings (threads, output path).
nlohmann::ordered_json to_json(const SweepConfig& cfg);

nlohmann::ordered_json domain_to_json(const Domain& d);
Domain domain_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json quadrature_to_json(const QuadratureSpec& q);
QuadratureSpec quadrature_from_json(const nlohmann::ordered_json& j);

struct SweepRow {
    double param = 0.0;
    double value = 0.0;
    double scaled = 0.0;
    double target = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double error_estimate = 0.0; ///< quadrature estimate on `scaled`
    bool ok = true;
    std::string failure;
};

struct SweepReport {
    std::string kind;
    std::vector<SweepRow> rows;
    double extrapolated = 0.0;
    double slope = 0.0;
    double residual = 0.0;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

    bool has_failures() const;
};

bool operator==(const SweepRow& a, const SweepRow& b);
bool operator==(const SweepReport& a, const SweepReport& b);

struct Extrapolation {
    double limit = 0.0;
    double slope = 0.0;
    double residual = 0.0; ///< max |fit - value|
};

/// Least-squares fit value = L + C·t over (t, value) pairs, t the distance to the limit
/// (1 - s, 1/n, |h|). Needs at least three points.
Extrapolation extrapolate_limit(std::span<const std::pair<double, double>> points);

SweepReport run_bbm_sweep(const SweepConfig& cfg);
SweepReport run_mollifier_sweep(const SweepConfig& cfg);
SweepReport run_translation_sweep(const SweepConfig& cfg);
SweepReport run_uniform_sweep(const SweepConfig& cfg);
SweepReport run_operator_sweep(const SweepConfig& cfg);
/// Dispatches on cfg.kind.
SweepReport run_sweep(const SweepConfig& cfg);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(const std::string& text);

nlohmann::ordered_json report_to_json(const SweepReport& r);
SweepReport report_from_json(const nlohmann::ordered_json& j);
void write_report(const SweepReport& r, ReportFormat format, std::ostream& os);
/// Writes to `path`, or stdout for "" and "-".
void emit_report(const SweepReport& r, ReportFormat format, const std::string& path);

} // namespace bbm
