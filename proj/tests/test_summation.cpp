#include "doctest.h"

#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "bbm/summation.hpp"

TEST_CASE("pairwise sum of short and empty inputs") {
    CHECK(bbm::pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(bbm::pairwise_sum(std::vector<double>{1.5}) == 1.5);
    CHECK(bbm::pairwise_sum(std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}) == 55);
}

TEST_CASE("pairwise sum beats naive accumulation on many small terms") {
    std::vector<double> v(1 << 20, 0.1);
    const double exact = 0.1 * static_cast<double>(v.size());
    const double naive = std::accumulate(v.begin(), v.end(), 0.0);
    const double pair = bbm::pairwise_sum(v);
    CHECK(std::abs(pair - exact) <= std::abs(naive - exact));
    CHECK(std::abs(pair - exact) < 1e-9);
}

TEST_CASE("parallel_map stores by index for any worker count") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> base(1003);
    for (double& x : base)
        x = dist(rng);
    const auto fn = [&](std::size_t i) { return base[i] * base[i] + static_cast<double>(i); };
    const auto ref = bbm::parallel_map<double>(base.size(), 1, fn);
    for (int t : {2, 3, 8, 64}) {
        const auto got = bbm::parallel_map<double>(base.size(), t, fn);
        CHECK(got == ref);
        CHECK(bbm::pairwise_sum(got) == bbm::pairwise_sum(ref));
    }
    CHECK(bbm::parallel_map<double>(0, 4, fn).empty());
}

TEST_CASE("parallel_map rethrows the smallest failing index") {
    const auto fn = [](std::size_t i) -> int {
        if (i == 17 || i == 40)
            throw std::runtime_error(std::to_string(i));
        return static_cast<int>(i);
    };
    for (int t : {1, 2, 5, 8}) {
        try {
            bbm::parallel_map<int>(100, t, fn);
            FAIL("expected a throw");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "17");
        }
    }
}
