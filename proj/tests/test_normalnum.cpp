#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "korosum/normalnum.hpp"

using namespace korosum;

namespace {
Schedule stoneham() {
    Schedule s;
    s.b = 2;
    s.primes = PrimeSet({3});
    s.c = SequenceSpec::geometric_of(3, 3);
    s.m = SequenceSpec::geometric_of(2, 2);
    return s;
}

// Brute force: sup over t of |#{x < t}/N - t|, with t at every point from
// both sides and at 1.
double brute_star(const std::vector<double>& x) {
    const double N = static_cast<double>(x.size());
    std::vector<double> ts(x);
    ts.push_back(1.0);
    double best = 0;
    for (double t : ts) {
        double below = 0, at_or_below = 0;
        for (double y : x) {
            below += y < t;
            at_or_below += y <= t;
        }
        best = std::max({best, std::abs(below / N - t), std::abs(at_or_below / N - t)});
    }
    return best;
}
}  // namespace

TEST_CASE("schedule validation") {
    const auto v = validate_schedule(stoneham(), 20);
    CHECK(v.horizon == 20);
    CHECK(v.trend_decreasing);

    Schedule bad = stoneham();
    bad.c = SequenceSpec::list_of({3, 9, 27, 15, 45});
    try {
        validate_schedule(bad, 5);
        FAIL("expected a violation");
    } catch (const ScheduleViolation& e) {
        CHECK(e.index() == 4);
    }

    Schedule slow = stoneham();
    slow.m = SequenceSpec::linear_of(1, 1);
    CHECK_FALSE(validate_schedule(slow, 20).trend_decreasing);

    Schedule shared = stoneham();
    shared.b = 3;
    CHECK_THROWS_AS(validate_schedule(shared, 5), ScheduleViolation);
}

TEST_CASE("ancillary sequence against the exact expansion") {
    const Schedule s = stoneham();
    const auto x = ancillary_sequence(s, 200);
    CHECK(x[0].num == 0);
    CHECK(x[1].num == 0);
    // alpha truncated far beyond n = 200 behaves like alpha itself here
    mpq_class alpha = 0;
    for (std::size_t k = 1; k <= 9; ++k) {
        mpz_class den = s.c_at(k);
        den <<= s.m_at(k);
        alpha += mpq_class(1, 1) / mpq_class(den);
    }
    for (u64 n = 2; n <= 200; ++n) {
        mpq_class v = alpha;
        mpz_class scale = 1;
        scale <<= n;
        v *= scale;
        mpz_class fl = v.get_num() / v.get_den();
        v -= fl;
        const mpq_class diff = abs(v - mpq_class(x[n].num, x[n].den));
        std::size_t k = 1;
        while (s.m_at(k + 1) <= n) ++k;
        // the gap is the tail of the series, at most twice its first term
        mpz_class tail_den = s.c_at(k + 1);
        tail_den <<= s.m_at(k + 1) - n;
        CHECK(diff <= mpq_class(2) / mpq_class(tail_den));
    }
}

TEST_CASE("star discrepancy") {
    CHECK(star_discrepancy({0.0}) == 1.0);
    for (std::size_t N : {1, 5, 64}) {
        std::vector<double> pts;
        for (std::size_t i = 1; i <= N; ++i) pts.push_back((2.0 * i - 1) / (2.0 * N));
        CHECK(star_discrepancy(pts) == doctest::Approx(0.5 / N));
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> len(1, 64);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> pts(len(rng));
        for (auto& p : pts) p = u(rng);
        if (rep % 5 == 0) pts.push_back(pts.front());  // ties
        CHECK(std::abs(star_discrepancy(pts) - brute_star(pts)) <= 1e-12);
    }
    CHECK_THROWS_AS(star_discrepancy({0.5, 1.0}), OutOfUnitInterval);
}

TEST_CASE("Erdos-Turan estimate") {
    // units mod 9 form one orbit of 2; the inner sums vanish for h = 1, 2
    CHECK(erdos_turan_estimate(1, 9, 2, 6, 2) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(erdos_turan_estimate(1, 7, 2, 5, 1) >= 3.0);
}

TEST_CASE("discrepancy trace") {
    const auto t = discrepancy_trace(stoneham(), 1 << 12);
    REQUIRE(t.points.size() == 12);
    CHECK(t.points.front().N == 2);
    CHECK(t.points.front().star == 1.0);  // zero padding at the start
    CHECK(t.points.back().N == 4096);
    CHECK(t.final_below_first);
}

TEST_CASE("digits of alpha") {
    const Schedule s = stoneham();
    const auto d = alpha_digits(s, 64);
    REQUIRE(d.digits.size() == 64);
    // 256-bit fixed point: floor(2^256 / (3^k 2^{2^k})) summed over 2^k < 256
    mpz_class acc = 0;
    for (unsigned k = 1; (1u << k) < 256; ++k) {
        mpz_class t = 1;
        t <<= 256 - (1u << k);
        mpz_class p3;
        mpz_ui_pow_ui(p3.get_mpz_t(), 3, k);
        acc += t / p3;
    }
    for (unsigned i = 0; i < 64; ++i) CHECK(d.digits[i] == mpz_tstbit(acc.get_mpz_t(), 255 - i));
}
