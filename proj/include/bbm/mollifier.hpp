#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace bbm {

/// One nonnegative radial kernel ρ(|x|) on R^N.
struct Mollifier {
    int dim = 1;
    double parameter = 0.0; ///< s_n for the BBM family, width for the Gaussian family
    std::function<double(double)> profile;
    /// ∫_a^b ρ(r) r^{N-1+k} dr, b may be +inf.
    std::function<double(double a, double b, int k)> moment;

    double operator()(double r) const { return profile(r); }
    /// ∫_{R^N} ρ = |S^{N-1}| ∫_0^∞ ρ(r) r^{N-1} dr.
    double l1_norm() const;
};

enum class MollifierKind { bbm, gaussian, custom };

class MollifierFamily {
public:
    /// ρ_n(r) = 2(1 - s_n) r^{-(N+2s_n-2)} ψ₀(r), ψ₀ ≡ 1 on [0, r_Ω], ≡ 0 beyond 2r_Ω.
    static MollifierFamily bbm(int dim, std::vector<double> s_sequence, double r_domain);
    /// ρ_n(r) = a_n exp(-r²/w_n²), w_n = 1/n, a_n normalizing ∫_0^∞ ρ_n r^{N-1} dr to 1.
    static MollifierFamily gaussian(int dim, std::vector<int> indices);
    static MollifierFamily custom(int dim, std::vector<double> parameters,
                                  std::function<double(std::size_t, double)> profile,
                                  std::function<double(std::size_t, double, double, int)> moment);
    /// ρ_n ≡ 0 (violates normalization).
    static MollifierFamily zero(int dim, std::size_t count);

    MollifierKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double r_domain() const { return r_domain_; }
    std::size_t size() const { return parameters_.size(); }
    const std::vector<double>& parameters() const { return parameters_; }

    /// Evaluator (n, r) -> ρ_n(r).
    double operator()(std::size_t n, double r) const { return profile_(n, r); }
    Mollifier member(std::size_t n) const;

private:
    MollifierKind kind_ = MollifierKind::custom;
    int dim_ = 1;
    double r_domain_ = 0.0;
    std::vector<double> parameters_;
    std::function<double(std::size_t, double)> profile_;
    std::function<double(std::size_t, double, double, int)> moment_;
};

std::string to_string(MollifierKind kind);

/// C² smoothstep cutoff: 1 on [0, r0], 0 on [2r0, ∞).
double cutoff_profile(double r, double r0);

struct MollifierMoments {
    double parameter;
    double mass;          ///< ∫_0^∞ ρ_n r^{N-1}
    double tail;          ///< ∫_δ^∞ ρ_n r^{N-1}
    double first_moment;  ///< ∫_0^δ ρ_n r^N
    double second_moment; ///< ∫_0^δ ρ_n r^{N+1}
};

std::vector<MollifierMoments> check_mollifier(const MollifierFamily& family, double delta);

struct MollifierAssessment {
    bool normalization = false; ///< mass -> 1
    bool concentration = false; ///< mass beyond δ -> 0
    bool moments = false;       ///< first and second moments on [0, δ] -> 0
    std::string violation;      ///< empty when every condition holds

    bool ok() const { return violation.empty(); }
};

/// Trend test over the family: |mass - 1| and the tail must be non-increasing along the
/// indices and end below `final_tolerance`; the moments must fall on the last step and end below it.
MollifierAssessment assess_mollifier(const std::vector<MollifierMoments>& rows, double final_tolerance = 0.1);

/// Throws ConditionViolation naming the first failed condition.
void require_mollifier_conditions(const MollifierFamily& family, double delta);

} // namespace bbm
