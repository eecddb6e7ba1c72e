#include "doctest.h"

#include <cmath>
#include <limits>

#include "bbm/constants.hpp"
#include "bbm/mollifier.hpp"
#include "bbm/types.hpp"
#include "oracles.hpp"

using namespace bbm;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

// ∫_a^b ρ(r) r^{N-1+k} dr, integrand sampled through the profile only
double oracle_moment(const Mollifier& m, double a, double b, int k) {
    const auto f = [&](double r) { return m(r) * std::pow(r, m.dim - 1 + k); };
    return oracle::simpson(f, a, b, 1e-13);
}
} // namespace

TEST_CASE("cutoff profile is a C2 step") {
    CHECK(cutoff_profile(0.3, 1.0) == 1.0);
    CHECK(cutoff_profile(1.0, 1.0) == 1.0);
    CHECK(cutoff_profile(2.0, 1.0) == 0.0);
    CHECK(cutoff_profile(1.5, 1.0) == doctest::Approx(0.5));
    const double h = 1e-4;
    for (double r0 : {1.0, 2.0}) {
        const double slope = (cutoff_profile(r0 + h, 1.0) - cutoff_profile(r0 - h, 1.0)) / (2 * h);
        CHECK(std::abs(slope) < 1e-6);
    }
    double prev = 1.0;
    for (double r = 1.0; r <= 2.0; r += 0.01) {
        CHECK(cutoff_profile(r, 1.0) <= prev + 1e-15);
        prev = cutoff_profile(r, 1.0);
    }
}

TEST_CASE("gaussian family: normalized, moments match the radial oracle") {
    for (int n = 1; n <= 3; ++n) {
        const MollifierFamily fam = MollifierFamily::gaussian(n, {2, 5, 11});
        CHECK(fam.kind() == MollifierKind::gaussian);
        CHECK(fam.size() == 3);
        CHECK(fam.parameters()[1] == doctest::Approx(0.2));
        for (std::size_t i = 0; i < fam.size(); ++i) {
            const Mollifier m = fam.member(i);
            CHECK(m.moment(0.0, inf, 0) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(m.l1_norm() == doctest::Approx(sphere_area(n)).epsilon(1e-12));
            for (int k : {0, 1, 2})
                CHECK(m.moment(0.0, 0.1, k) == doctest::Approx(oracle_moment(m, 0.0, 0.1, k)).epsilon(1e-9));
            CHECK(m.moment(0.1, inf, 0) == doctest::Approx(oracle_moment(m, 0.1, 30.0, 0)).epsilon(1e-8));
            CHECK(fam(i, 0.05) == m(0.05));
        }
    }
    CHECK_THROWS_AS(MollifierFamily::gaussian(1, {4, 4}), ConfigError);
    CHECK_THROWS_AS(MollifierFamily::gaussian(1, {0, 4}), ConfigError);
    CHECK_THROWS_AS(MollifierFamily::gaussian(1, {4}).member(1), ConfigError);
}

TEST_CASE("bbm family: mass r^{2-2s} on the core plus the ramp") {
    const double r = 2.0;
    const MollifierFamily fam = MollifierFamily::bbm(1, {0.9, 0.99}, r);
    CHECK(fam.r_domain() == r);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const Mollifier m = fam.member(i);
        const double s = m.parameter;
        CHECK(m.moment(0.0, r, 0) == doctest::Approx(std::pow(r, 2 - 2 * s)).epsilon(1e-13));
        CHECK(m.moment(r, inf, 0) == doctest::Approx(oracle_moment(m, r, 2 * r, 0)).epsilon(1e-10));
        CHECK(m.moment(0.1, inf, 0) == doctest::Approx(oracle_moment(m, 0.1, 2 * r, 0)).epsilon(1e-9));
        CHECK(m(2 * r + 0.1) == 0.0);
    }
    // T(0.1) at s = 0.9 as a direct integral
    const Mollifier m = fam.member(0);
    const double t = oracle::simpson([&](double x) { return 2 * 0.1 * std::pow(x, -0.8) * cutoff_profile(x, r); },
                                     0.1, 2 * r, 1e-13);
    CHECK(m.moment(0.1, inf, 0) == doctest::Approx(t).epsilon(1e-9));
    CHECK_THROWS_AS(MollifierFamily::bbm(1, {0.9, 0.8}, r), ConfigError);
    CHECK_THROWS_AS(MollifierFamily::bbm(1, {0.9}, 0.0), ConfigError);
    CHECK_THROWS_AS(MollifierFamily::bbm(1, {1.0}, r), DomainError);
}

TEST_CASE("assessment of standard families") {
    for (int n = 1; n <= 3; ++n) {
        const auto g = check_mollifier(MollifierFamily::gaussian(n, {4, 8, 16, 32, 64}), 0.1);
        CHECK(g.size() == 5);
        const MollifierAssessment a = assess_mollifier(g);
        CHECK(a.ok());
        CHECK(a.normalization);
        CHECK(a.concentration);
        CHECK(a.moments);
        for (std::size_t i = 1; i < g.size(); ++i)
            CHECK(g[i].tail <= g[i - 1].tail);
    }
    const auto b = check_mollifier(MollifierFamily::bbm(1, {0.8, 0.9, 0.95, 0.99, 0.999}, 2.0), 0.1);
    CHECK(assess_mollifier(b).ok());
    CHECK(std::abs(b.back().mass - 1.0) < 0.01);
    CHECK_THROWS_AS(check_mollifier(MollifierFamily::gaussian(1, {4}), 0.0), DomainError);
}

TEST_CASE("violations are named") {
    const MollifierAssessment z = assess_mollifier(check_mollifier(MollifierFamily::zero(1, 5), 0.1));
    CHECK_FALSE(z.ok());
    CHECK(z.violation.rfind("normalization", 0) == 0);
    CHECK_THROWS_WITH_AS(require_mollifier_conditions(MollifierFamily::zero(2, 5), 0.1),
                         doctest::Contains("normalization"), ConditionViolation);
    CHECK_FALSE(assess_mollifier({}).ok());

    // normalized but spreading: mass escapes beyond δ
    std::vector<MollifierMoments> spread;
    for (int i = 0; i < 5; ++i)
        spread.push_back({double(i), 1.0, 0.1 * i, 0.0, 0.0});
    const MollifierAssessment s = assess_mollifier(spread);
    CHECK(s.normalization);
    CHECK_FALSE(s.concentration);
    CHECK(s.violation.rfind("concentration", 0) == 0);

    // moments may rise first but must fall at the end
    std::vector<MollifierMoments> late{{1, 1, 0.5, 0.01, 0.001}, {2, 1, 0.1, 0.03, 0.002}, {3, 1, 0.01, 0.02, 0.001}};
    CHECK(assess_mollifier(late).ok());
    late.push_back({4, 1, 0.001, 0.05, 0.001});
    CHECK(assess_mollifier(late).violation.rfind("moments", 0) == 0);
    CHECK_FALSE(assess_mollifier(late, 0.01).ok());
}

TEST_CASE("custom families pass through their callables") {
    const MollifierFamily c = MollifierFamily::custom(
        1, {1.0, 2.0}, [](std::size_t n, double r) { return (n + 1.0) * r; },
        [](std::size_t, double a, double b, int) { return b - a; });
    CHECK(c.kind() == MollifierKind::custom);
    CHECK(c(1, 3.0) == 6.0);
    CHECK(c.member(0).moment(1.0, 4.0, 0) == 3.0);
    CHECK(to_string(MollifierKind::bbm) == "bbm");
}
