#include "doctest.h"

#include <cmath>
#include <random>

#include "bbm/constants.hpp"
#include "bbm/corpus.hpp"
#include "bbm/functionals.hpp"
#include "oracles.hpp"

using namespace bbm;

namespace {
Point pt(std::initializer_list<double> v) {
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v)
        p(i++) = x;
    return p;
}

const Domain I = Domain::interval(-1.0, 1.0);
const Domain Q = Domain::box(pt({0, 0}), pt({1, 1}));

QuadratureSpec light() {
    QuadratureSpec q;
    q.outer_nodes = 4;
    q.outer_levels = 4;
    q.angular_nodes = 12;
    q.radial_nodes = 6;
    q.estimate_error = false;
    return q;
}

ScalarField zero_bump() { return linear_combination(0.0, corpus::bump1d(), 0.0, corpus::bump1d()); }

double bump(double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; }
} // namespace

TEST_CASE("seminorm: zero field, pure gauge and the brute-force oracle") {
    const VectorPotential Z = corpus::zero_potential(1);
    CHECK(magnetic_seminorm_sq(corpus::constant(1, 0.0), Z, I, 0.5, QuadratureSpec{}).value == 0.0);
    CHECK(magnetic_seminorm_sq(corpus::constant(1, 2.0), Z, I, 0.5, QuadratureSpec{}).value == 0.0);
    for (double s : {0.3, 0.7, 0.95})
        CHECK(std::abs(magnetic_seminorm_sq(corpus::plane_wave1d(1.3), corpus::constant_potential(1, 1.3), I, s,
                                            QuadratureSpec{})
                           .value) < 1e-10);
    const double got = magnetic_seminorm_sq(corpus::gaussian(1), Z, I, 0.5, QuadratureSpec{}).value;
    const double ref = oracle::brute_force_seminorm_1d([](double x) { return std::exp(-x * x); }, 0.5) / 0.5;
    CHECK(got == doctest::Approx(ref).epsilon(1e-4));
    CHECK_THROWS_AS(magnetic_seminorm_sq(corpus::gaussian(2), Z, I, 0.5, QuadratureSpec{}), ConfigError);
    CHECK_THROWS_AS(magnetic_seminorm_sq(corpus::gaussian(1), Z, I, 1.5, QuadratureSpec{}), DomainError);
}

TEST_CASE("local energy against 1D oracles") {
    const TensorGrid g(I, 8, 10);
    const double e = local_magnetic_energy(corpus::gaussian(1), corpus::zero_potential(1), g).value;
    const double ref = oracle::simpson([](double x) { return 4 * x * x * std::exp(-2 * x * x); }, -1.0, 1.0, 1e-15);
    CHECK(e == doctest::Approx(ref).epsilon(1e-8));
    // A = x adds x² u² to the energy
    const double e2 = local_magnetic_energy(corpus::gaussian(1), corpus::linear_potential1d(1.0), g).value;
    const double ref2 = oracle::simpson([](double x) { return 5 * x * x * std::exp(-2 * x * x); }, -1.0, 1.0, 1e-15);
    CHECK(e2 == doctest::Approx(ref2).epsilon(1e-8));
    CHECK(local_magnetic_energy(corpus::constant(1, 3.0), corpus::zero_potential(1), g).value == 0.0);
    CHECK(local_magnetic_energy(corpus::plane_wave1d(2.0), corpus::constant_potential(1, 2.0), g).value < 1e-20);
    CHECK(l2_norm_sq(corpus::gaussian(1), g) ==
          doctest::Approx(oracle::simpson([](double x) { return std::exp(-2 * x * x); }, -1, 1, 1e-15)).epsilon(1e-10));
    CHECK_THROWS_AS(local_magnetic_energy(modulus_field(corpus::gaussian(1)), corpus::zero_potential(1), g), ConfigError);
}

TEST_CASE("directional energies sum to the full energy over the sphere") {
    const TensorGrid g(Q, 6, 5);
    const ScalarField u = corpus::gaussian(2);
    const VectorPotential A = corpus::landau_gauge(1.0);
    const double e = local_magnetic_energy(u, A, g).value;
    double acc = 0.0;
    for (const SphereNode& n : unit_sphere_nodes(2, 16))
        acc += n.weight * directional_energy(u, A, n.direction, g);
    CHECK(acc == doctest::Approx(dimensional_constants(2).q * e).epsilon(1e-12));
}

TEST_CASE("exterior cross term: closed-form tail in 1D") {
    const ScalarField b = corpus::bump1d();
    const double got = exterior_cross_term(b, I, 0.5, QuadratureSpec{}).value;
    const double ref = 2.0 * oracle::simpson([](double x) {
        return bump(x) * bump(x) * (1.0 / (1.0 + x) + 1.0 / (1.0 - x));
    }, -1.0 + 1e-9, 1.0 - 1e-9, 1e-14);
    CHECK(got == doctest::Approx(ref).epsilon(1e-5));
    CHECK(exterior_cross_term(zero_bump(), I, 0.5, QuadratureSpec{}).value == 0.0);
    CHECK_THROWS_AS(exterior_cross_term(corpus::gaussian(1), I, 0.5, QuadratureSpec{}), DomainError);
    CHECK_THROWS_AS(exterior_cross_term(b, Domain::interval(-0.5, 0.5), 0.5, QuadratureSpec{}), DomainError);

    // (1-s)·cross decreases along s
    double prev = 1e300;
    for (double s : {0.8, 0.9, 0.95, 0.99}) {
        const double v = (1 - s) * exterior_cross_term(b, I, s, QuadratureSpec{}).value;
        CHECK(v < prev);
        prev = v;
    }
    const FunctionalValue full = fullspace_seminorm_sq(b, corpus::linear_potential1d(1.0), I, 0.7, QuadratureSpec{});
    const double parts = magnetic_seminorm_sq(b, corpus::linear_potential1d(1.0), I, 0.7, QuadratureSpec{}).value +
                         exterior_cross_term(b, I, 0.7, QuadratureSpec{}).value;
    CHECK(full.value == doctest::Approx(parts).epsilon(1e-14));
}

TEST_CASE("affine gauge covariance on identical nodes") {
    const GaugeFunction g1{pt({0.7}), -0.3};
    const ScalarField u = corpus::gaussian(1);
    const VectorPotential A = corpus::linear_potential1d(1.0);
    const auto [v, B] = gauge_transform(u, A, g1);
    for (double s : {0.5, 0.9}) {
        const double a = magnetic_seminorm_sq(u, A, I, s, QuadratureSpec{}).value;
        const double b = magnetic_seminorm_sq(v, B, I, s, QuadratureSpec{}).value;
        CHECK(std::abs(a - b) <= 1e-10 * a);
    }
    const TensorGrid g(I, 8, 10);
    CHECK(local_magnetic_energy(v, B, g).value == doctest::Approx(local_magnetic_energy(u, A, g).value).epsilon(1e-12));

    const GaugeFunction g2{pt({0.4, -0.9}), 1.0};
    const auto [w, C] = gauge_transform(corpus::gaussian(2), corpus::landau_gauge(1.0), g2);
    const double a = magnetic_seminorm_sq(corpus::gaussian(2), corpus::landau_gauge(1.0), Q, 0.6, light()).value;
    const double b = magnetic_seminorm_sq(w, C, Q, 0.6, light()).value;
    CHECK(std::abs(a - b) <= 1e-10 * a);
}

TEST_CASE("diamagnetic inequality for the seminorm") {
    const std::vector<std::pair<ScalarField, VectorPotential>> cases{
        {corpus::gaussian(1), corpus::linear_potential1d(1.0)},
        {corpus::modulated_gaussian1d(2.0), corpus::linear_potential1d(0.5)},
        {corpus::bump1d(), corpus::constant_potential(1, 1.5)}};
    for (const auto& [u, A] : cases) {
        for (double s : {0.5, 0.9}) {
            QuadratureSpec q;
            q.estimate_error = false;
            const double mag = magnetic_seminorm_sq(u, A, I, s, q).value;
            const double mod = magnetic_seminorm_sq(modulus_field(u), corpus::zero_potential(1), I, s, q).value;
            CHECK(mod <= mag + 1e-6);
        }
    }
    const double mag = magnetic_seminorm_sq(corpus::gaussian(2), corpus::landau_gauge(1.0), Q, 0.5, light()).value;
    const double mod = magnetic_seminorm_sq(modulus_field(corpus::gaussian(2)), corpus::zero_potential(2), Q, 0.5, light()).value;
    CHECK(mod <= mag + 1e-6);
}

TEST_CASE("homogeneity and linearity in the field") {
    const ScalarField u = corpus::modulated_gaussian1d(1.0);
    const VectorPotential A = corpus::linear_potential1d(1.0);
    const Complex lambda(0.5, -2.0);
    const ScalarField w = linear_combination(lambda, u, 0.0, u);
    QuadratureSpec q;
    q.near_field = NearFieldMode::drop;
    const double a = magnetic_seminorm_sq(u, A, I, 0.8, q).value;
    const double b = magnetic_seminorm_sq(w, A, I, 0.8, q).value;
    CHECK(b == doctest::Approx(std::norm(lambda) * a).epsilon(1e-13));
    const ScalarField two = linear_combination(2.0, u, 0.0, u);
    CHECK(magnetic_seminorm_sq(two, A, I, 0.8, q).value == 4.0 * a);
}

TEST_CASE("bbm mollifier identity and a general mollifier") {
    const ScalarField u = corpus::gaussian(1);
    const VectorPotential A = corpus::linear_potential1d(1.0);
    const MollifierFamily fam = MollifierFamily::bbm(1, {0.6, 0.9, 0.99}, I.diameter());
    for (std::size_t n = 0; n < fam.size(); ++n) {
        const double s = fam.parameters()[n];
        const double m = mollified_functional(u, A, I, fam.member(n), QuadratureSpec{}).value;
        const double g = magnetic_seminorm_sq(u, A, I, s, QuadratureSpec{}).value;
        CHECK(std::abs(m - 2 * (1 - s) * g) <= 1e-10 * m);
    }
    const MollifierFamily zero = MollifierFamily::zero(1, 1);
    CHECK(mollified_functional(u, A, I, zero.member(0), QuadratureSpec{}).value == 0.0);
    CHECK_THROWS_AS(mollified_functional(u, A, I, MollifierFamily::gaussian(2, {4}).member(0), QuadratureSpec{}),
                    ConfigError);

    // bounded by ‖ρ‖_{L¹}·(‖u‖² + energy) over a tenfold range of widths
    const TensorGrid grid(I, 8, 10);
    const double norm = l2_norm_sq(u, grid) + local_magnetic_energy(u, A, grid).value;
    const MollifierFamily gauss = MollifierFamily::gaussian(1, {2, 4, 8, 20});
    double lo = 1e300, hi = 0.0;
    for (std::size_t n = 0; n < gauss.size(); ++n) {
        const Mollifier rho = gauss.member(n);
        const double ratio = mollified_functional(u, A, I, rho, QuadratureSpec{}).value / (rho.l1_norm() * norm);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 2.0);
}

TEST_CASE("translation differences") {
    const ScalarField b = corpus::bump1d();
    const VectorPotential A = corpus::linear_potential1d(1.0);
    const TensorGrid g(I.dilated_box(0.1), 8, 10);
    CHECK(translation_difference_sq(b, A, pt({0.0}), g) == 0.0);
    const double energy = directional_energy(b, A, Direction(pt({1.0})), g);
    const double r = translation_difference_sq(b, A, pt({0.0125}), g) / (0.0125 * 0.0125);
    CHECK(r == doctest::Approx(energy).epsilon(2e-3));
    // negative direction gives the same limit
    const double rm = translation_difference_sq(b, A, pt({-0.0125}), g) / (0.0125 * 0.0125);
    CHECK(rm == doctest::Approx(energy).epsilon(2e-3));
    CHECK_THROWS_AS(translation_difference_sq(b, A, pt({0.2}), g), DomainError);
    CHECK_THROWS_AS(translation_difference_sq(b, A, pt({1.5}), TensorGrid(I.dilated_box(2.0), 4, 4)), DomainError);
    CHECK_THROWS_AS(translation_difference_sq(corpus::gaussian(1), A, pt({0.1}), g), DomainError);
    CHECK_THROWS_AS(translation_difference_sq(b, A, pt({0.1, 0.0}), g), ConfigError);
}

TEST_CASE("uniform bound report") {
    const UniformBoundReport z =
        uniform_bound_check(zero_bump(), corpus::zero_potential(1), I, {0.5, 0.9}, QuadratureSpec{});
    CHECK(z.norm_sq == 0.0);
    CHECK(z.rows[0].ratio == 0.0);
    CHECK(z.spread() == 1.0);
    const UniformBoundReport r =
        uniform_bound_check(corpus::bump1d(), corpus::zero_potential(1), I, {0.5, 0.7, 0.9, 0.99}, QuadratureSpec{});
    CHECK(r.rows.size() == 4);
    CHECK(r.spread() < 5.0);
    const double limit = bbm_constant(1) * r.energy / r.norm_sq;
    CHECK(std::abs(r.rows.back().ratio - limit) < std::abs(r.rows.front().ratio - limit));
    CHECK_THROWS_AS(uniform_bound_check(corpus::gaussian(1), corpus::zero_potential(1), I, {0.5}, QuadratureSpec{}),
                    DomainError);
}
