#include "doctest.h"

#include <random>

#include "korosum/kernels.hpp"
#include "korosum/numtheory.hpp"

using namespace korosum::kernels;

TEST_CASE("unit roots land on the circle") {
    CHECK(unit_root(0, 7).real() == 1.0);
    CHECK(std::abs(unit_root(1, 4) - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(unit_root(3, 6) + 1.0) < 1e-15);
}

TEST_CASE("serial and parallel orbit sums agree bit for bit") {
    for (u64 count : {u64{0}, u64{1}, u64{1000}, kBlock - 1, kBlock, 5 * kBlock + 17}) {
        const cplx s = orbit_sum_serial(7, 2, 3125, count);
        const cplx p = orbit_sum_omp(7, 2, 3125, count);
        CHECK(std::abs(s - p) < 1e-9);
    }
    // the parallel kernel is independent of the thread layout
    const cplx a = orbit_sum_omp(1, 10, 59049, 300000);
    const cplx b = orbit_sum_omp(1, 10, 59049, 300000);
    CHECK(a == b);
}

TEST_CASE("prefix sums match separate evaluations") {
    const std::vector<u64> cps{1, 5, 100, 4000};
    const auto pre = orbit_prefix_sums(3, 2, 81, cps);
    for (std::size_t i = 0; i < cps.size(); ++i) CHECK(std::abs(pre[i] - orbit_sum_serial(3, 2, 81, cps[i])) < 1e-12);
}

TEST_CASE("lag sums: serial and parallel") {
    const u64 m = 6561;
    std::vector<u64> r(3000);
    u64 x = 2;
    for (auto& v : r) {
        v = x;
        x = korosum::mul_mod(x, 2, m);
    }
    const auto s = lag_sum_magnitudes_serial(r, m, 7);
    const auto p = lag_sum_magnitudes_omp(r, m, 7);
    REQUIRE(s.size() == p.size());
    REQUIRE(s.size() == (3000 - 1) / 7);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == doctest::Approx(p[i]).epsilon(1e-12));
}

TEST_CASE("compensated and pairwise sums") {
    CompensatedSum cs;
    cs.add({1e16, 0});
    for (int i = 0; i < 1000; ++i) cs.add({1.0, 0});
    cs.add({-1e16, 0});
    CHECK(cs.value().real() == 1000.0);
    std::vector<double> v(1025, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(102.5).epsilon(1e-14));
}
