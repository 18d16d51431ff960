#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "korosum/bounds.hpp"
#include "korosum/sumeval.hpp"

using namespace korosum;

namespace {
std::complex<double> direct(i64 a, u64 b, u64 m, u64 N) {
    std::complex<double> s = 0;
    long double r = 0;
    u64 x = reduce_numerator(a, m);
    for (u64 n = 1; n <= N; ++n) {
        x = mul_mod(x, b, m);
        r = 2.0L * 3.14159265358979323846264338327950288L * x / m;
        s += std::complex<double>(static_cast<double>(std::cos(r)), static_cast<double>(std::sin(r)));
    }
    return s;
}
constexpr double kTol = 1e-12;
}  // namespace

TEST_CASE("small sums") {
    auto r = eval_sum(1, 2, 1, 5);
    CHECK(r.value.real() == doctest::Approx(5.0));
    CHECK(std::abs(r.value.imag()) < kTol);
    r = eval_sum(1, 2, 3, 2);
    CHECK(std::abs(r.value - std::complex<double>(-1, 0)) < kTol);
    r = eval_sum(1, 2, 9, 6);
    CHECK(r.magnitude < kTol);
    CHECK(eval_sum(1, 2, 9, 6, Exec::serial).magnitude < kTol);
}

TEST_CASE("period folding") {
    CHECK(eval_sum_reduced(1, 2, 9, 12).magnitude < kTol);
    CHECK(std::abs(eval_sum_reduced(1, 2, 5, 4).value - std::complex<double>(-1, 0)) < kTol);
    const std::complex<double> e23 = std::polar(1.0, 2 * M_PI * 2 / 3);
    CHECK(std::abs(eval_sum_reduced(1, 2, 3, 7).value - (-3.0 + e23)) < kTol);
    for (u64 N : {1, 17, 1000, 12345})
        CHECK(std::abs(eval_sum_reduced(5, 2, 3125, N).value - eval_sum(5, 2, 3125, N).value) < 1e-9);
}

TEST_CASE("sums match a long-double loop") {
    for (i64 a : {1, 7, -4}) CHECK(std::abs(eval_sum(a, 10, 2187, 5000).value - direct(a, 10, 2187, 5000)) < 1e-9);
    CHECK(reduce_numerator(-4, 9) == 5);
}

TEST_CASE("prefix evaluation") {
    const std::vector<u64> Ns{1, 3, 10, 500};
    const auto pre = eval_sum_prefixes(2, 2, 243, Ns);
    for (std::size_t i = 0; i < Ns.size(); ++i) CHECK(std::abs(pre[i] - eval_sum(2, 2, 243, Ns[i]).value) < 1e-12);
}

TEST_CASE("m' construction") {
    const PrimeSet P({3});
    const ExponentState e = exponents(1);
    // N = m^{1/4} gives x = (1/6 + (1/2)(1/4)) / (7/6) = 1/4; floor(6/4) = 1
    const u64 m = 729;
    const u64 N = static_cast<u64>(std::ceil(std::pow(729.0, 0.25)));
    const u64 mp = choose_m_prime(m, N, P, e.alpha, e.gamma, e.nu);
    CHECK(is_admissible_m_prime(m, mp));
    CHECK(m % mp == 0);
    // the floor collapses at tiny N
    CHECK(choose_m_prime(729, 1, P, e.alpha, e.gamma, e.nu) == 3);
    CHECK(choose_m_prime(4 * 27, 1, PrimeSet({2, 3}), e.alpha, e.gamma, e.nu) == 12);
    CHECK_THROWS_AS(choose_m_prime(729, 10, P, 0, e.gamma, e.nu), DegenerateRange);
}

TEST_CASE("m' for x = 1/2") {
    // 1 + gamma - nu = 0 removes N, leaving x = alpha/(1+alpha) = 1/2
    const PrimeSet P({3});
    const mpq_class alpha(1), gamma(0), nu(1);
    CHECK(choose_m_prime(729, 50, P, alpha, gamma, nu) == 81);
}

TEST_CASE("m bar") {
    CHECK(m_bar(2, 9, 3) == 3);
    for (u64 m : {9, 45, 243}) CHECK(m_bar(2, m, m) == m);
    const u64 tau = mult_order(2, 15);
    CHECK(m_bar(2, 45, 15) == std::gcd(mod_pow(2, tau, 45) + 45 - 1, u64{45}));
    CHECK_THROWS_AS(m_bar(2, 45, 7), NotDivisor);
}

TEST_CASE("differencing inequality") {
    auto d = verify_differencing(1, 2, 9, 3, 6);
    CHECK(d.holds);
    CHECK(d.tau == 2);
    // N < tau: only the diagonal term survives
    d = verify_differencing(1, 2, 243, 243, 10);
    CHECK(d.rhs == doctest::Approx(2430.0));
    CHECK(d.lhs_squared == doctest::Approx(std::norm(eval_sum(1, 2, 243, 10).value)));
    CHECK(d.holds);
    const auto s = verify_differencing(4, 2, 3125, 25, 700, Exec::serial);
    const auto p = verify_differencing(4, 2, 3125, 25, 700, Exec::parallel);
    CHECK(s.rhs == doctest::Approx(p.rhs).epsilon(1e-12));
    CHECK(s.holds);
}

TEST_CASE("gcd claims") {
    const PrimeSet P({3, 5});
    const mpz_class M = capital_m(P, 2);
    for (u64 m : {45, 225, 675, 3375}) {
        for (u64 mp : divisors(m)) {
            if (!is_admissible_m_prime(m, mp)) continue;
            const ClaimReport c = check_claims(2, m, mp, M, 200);
            CHECK(c.order_preserved);
            CHECK(c.gcd_structure);
            CHECK(c.divides_capital_m);
        }
    }
}
