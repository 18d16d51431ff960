// Acceptance runner: one PASS/FAIL line per criterion. A criterion also
// fails when it overruns its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "korosum/bounds.hpp"
#include "korosum/config.hpp"
#include "korosum/digits.hpp"
#include "korosum/normalnum.hpp"
#include "korosum/report.hpp"
#include "korosum/scan.hpp"
#include "korosum/sumeval.hpp"

using namespace korosum;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

mpq_class q(long n, long d = 1) { return mpq_class(n, d); }

mpq_class two_pow(unsigned e) {
    mpz_class z = 1;
    z <<= e;
    return mpq_class(z);
}

// ------------------------------------------------------------------ 1
Outcome interval_table() {
    const RationalInterval expect[] = {
        {q(1, 2), 0, true},           {q(1, 3), 0, true},
        {q(1, 4), q(2), false},       {q(28, 139), q(14, 17), false},
        {q(105, 622), q(840, 1721), false}, {q(52080, 358871), q(26040, 76903), false}};
    for (unsigned k = 0; k <= 5; ++k) {
        const RationalInterval I = nontrivial_interval(k);
        const bool same = I.lo == expect[k].lo && I.hi_infinite == expect[k].hi_infinite &&
                          (I.hi_infinite || I.hi == expect[k].hi);
        if (!same) return {false, "I_" + std::to_string(k) + " = " + I.to_string()};
    }
    return {true, "I_0..I_5 exact"};
}

// ------------------------------------------------------------------ 2
Outcome limit_constant_check() {
    const LimitConstant lc = epsilon_prime_and_c(120);
    mpz_class num("-117094960687104654952");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, 20);
    const mpq_class published(num, den);
    const mpq_class err = abs(lc.estimate - published);
    const bool ok = err <= mpq_class(1, 1000000000000000) && lc.tail_bound() <= 1e-15;
    char buf[160];
    std::snprintf(buf, sizeof buf, "c = %.20f, |c - published| = %.2e, tail = %.2e", lc.value(), err.get_d(),
                  lc.tail_bound());
    return {ok, buf};
}

// ------------------------------------------------------------------ 3
Outcome decimals() {
    const double gam[] = {-0.195158, -0.0836393, -0.0378412, -0.0176574, -0.0084263, -0.0040877};
    const double nu[] = {-0.138175, -0.0949322, -0.0538255, -0.0287136, -0.0148872};
    double worst = 0;
    for (unsigned k = 1; k <= 6; ++k) worst = std::max(worst, std::abs(gamma_side_decimal(k) - gam[k - 1]));
    for (unsigned k = 1; k <= 5; ++k) worst = std::max(worst, std::abs(nu_side_decimal(k) - nu[k - 1]));
    char buf[80];
    std::snprintf(buf, sizeof buf, "11 values, max error %.2e", worst);
    return {worst < 5e-6, buf};
}

// ------------------------------------------------------------------ 4
Outcome order_structure() {
    struct Family {
        std::vector<u64> primes;
        std::vector<u64> bases;
    };
    const Family fams[] = {{{3, 5, 7}, {2, 10}}, {{2}, {3, 7}}};
    u64 checked = 0, skipped = 0, mu_one = 0;
    for (const auto& f : fams) {
        const PrimeSet P(f.primes);
        for (u64 m : smooth_numbers(1, 100000, P)) {
            for (u64 b : f.bases) {
                if (std::gcd(b, m) != 1) {
                    ++skipped;
                    continue;
                }
                const ModulusStructure s = mult_order_structured(b, m, P);
                if (s.order != mult_order_naive(b, m))
                    return {false, "mismatch at b=" + std::to_string(b) + " m=" + std::to_string(m)};
                mu_one += s.mu == 1;
                ++checked;
            }
        }
    }
    return {mu_one > 0, std::to_string(checked) + " pairs agree (" + std::to_string(mu_one) + " with mu = 1, " +
                            std::to_string(skipped) + " non-coprime pairs skipped)"};
}

// ------------------------------------------------------------------ 5
Outcome differencing_fuzz() {
    struct Family {
        std::vector<u64> primes;
        std::vector<u64> bases;
    };
    const Family fams[] = {{{3}, {2, 5}}, {{3, 5}, {2, 7}}, {{2, 3}, {5, 7}}, {{3, 5, 7}, {2, 11}}, {{2}, {3}}};
    std::vector<std::vector<u64>> moduli;
    for (const auto& f : fams) moduli.push_back(smooth_numbers(2, 1000000, PrimeSet(f.primes)));

    std::mt19937_64 rng(0x5eed);
    u64 constructed = 0, random_divisor = 0;
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t fi = rng() % std::size(fams);
        const Family& f = fams[fi];
        const PrimeSet P(f.primes);
        const u64 m = moduli[fi][rng() % moduli[fi].size()];
        const u64 b = f.bases[rng() % f.bases.size()];
        const u64 N = 1 + rng() % 5000;
        u64 a = 1 + rng() % (m - 1);
        while (std::gcd(a, m) != 1) a = 1 + rng() % (m - 1);

        u64 mp = 0;
        if (t % 2 == 0) {
            const ExponentState e = exponents(static_cast<unsigned>(rng() % 5));
            try {
                mp = choose_m_prime(m, N, P, e.alpha, e.gamma, e.nu);
                ++constructed;
            } catch (const DegenerateRange&) {
                mp = 0;
            }
        }
        if (mp == 0) {
            std::vector<u64> admissible;
            for (u64 d : divisors(m))
                if (is_admissible_m_prime(m, d)) admissible.push_back(d);
            mp = admissible[rng() % admissible.size()];
            ++random_divisor;
        }
        const DifferencingReport d = verify_differencing(static_cast<i64>(a), b, m, mp, N);
        worst = std::max(worst, d.lhs_squared / d.rhs);
        if (!(d.lhs_squared <= d.rhs * (1 + 1e-9)))
            return {false, "fails at a=" + std::to_string(a) + " b=" + std::to_string(b) + " m=" +
                               std::to_string(m) + " m'=" + std::to_string(mp) + " N=" + std::to_string(N)};
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "1000 instances (%llu constructed m', %llu random divisors), max lhs/rhs %.4f",
                  static_cast<unsigned long long>(constructed), static_cast<unsigned long long>(random_divisor),
                  worst);
    return {true, buf};
}

// ------------------------------------------------------------------ 6
Outcome bound_sweep() {
    ScanConfig c;
    c.primes = {3, 5};
    c.b = 2;
    c.m_min = 2;
    c.m_max = 1000000;
    c.a_policy = APolicy{APolicy::Kind::sample, {}, 20};
    c.n_policy.kind = NPolicy::Kind::powers;
    c.n_policy.exponents = {0.15, 0.25, 0.4, 0.6, 1.0};
    c.k_min = 0;
    c.k_max = 4;
    c.seed = 2024;
    c.workers = 0;
    try {
        // run_scan checks |S_N| against every bound and recursive <= main
        const auto rows = run_scan(c, 0);
        double worst = 0;
        for (const auto& r : rows) worst = std::max(worst, r.abs_sum / r.bound_recursive);
        char buf[120];
        std::snprintf(buf, sizeof buf, "%zu rows, max |S_N| / bound %.3e", rows.size(), worst);
        return {true, buf};
    } catch (const BoundViolation& e) {
        return {false, e.what()};
    }
}

// ------------------------------------------------------------------ 7
Outcome claim_two() {
    struct Family {
        std::vector<u64> primes;
        u64 b;
    };
    const Family fams[] = {{{3, 5, 7}, 2}, {{2, 3}, 5}, {{2, 5}, 3}};
    u64 pairs = 0;
    for (const auto& f : fams) {
        const PrimeSet P(f.primes);
        const mpz_class M = capital_m(P, f.b);
        for (u64 m : smooth_numbers(2, 10000, P)) {
            for (u64 mp : divisors(m)) {
                if (!is_admissible_m_prime(m, mp)) continue;
                const ClaimReport c = check_claims(f.b, m, mp, M, 200);
                if (!c.gcd_structure)
                    return {false, "m=" + std::to_string(m) + " m'=" + std::to_string(mp) +
                                       " i=" + std::to_string(c.first_gcd_failure)};
                ++pairs;
            }
        }
    }
    return {true, std::to_string(pairs) + " (m, m') pairs, i <= 200"};
}

// ------------------------------------------------------------------ 8
Outcome identities() {
    const auto table = exponent_table(31);
    const LimitConstant lc = epsilon_prime_and_c(31);
    const LimitConstant& c = limit_constant();
    for (unsigned k = 0; k <= 30; ++k) {
        const ExponentState& e = table[k];
        const std::string at = " at k=" + std::to_string(k);
        if (e.alpha != 1 / (two_pow(k + 2) - 2)) return {false, "alpha closed form" + at};
        if (e.gamma + e.nu != 2 - 1 / two_pow(k)) return {false, "gamma + nu" + at};
        if (e.nu - e.gamma - mpq_class(k + 1) / two_pow(k + 1) != lc.epsilon_prime[k] / two_pow(k + 1))
            return {false, "epsilon' linkage" + at};
        const RationalInterval I = nontrivial_interval(k);
        const RationalInterval J = nontrivial_interval(k + 1);
        // both are [lo, hi] with J.lo < I.lo, so they meet iff I.lo <= J.hi
        if (!(J.lo < I.lo && (J.hi_infinite || I.lo <= J.hi))) return {false, "I_k meets I_{k+1}" + at};
        if (k == 0) continue;
        if (!I.strictly_contains(optimal_range(k)->outer())) return {false, "optimal range inside I_k" + at};
        if (gamma_side_exponent(k, c) > -1 / two_pow(k + 3)) return {false, "gamma-side exponent" + at};
        if (nu_side_exponent(k, c) > -1 / two_pow(k + 3)) return {false, "nu-side exponent" + at};
    }
    return {true, "k = 0..30 exact"};
}

// ------------------------------------------------------------------ 9
double brute_star(const std::vector<double>& x) {
    const double N = static_cast<double>(x.size());
    std::vector<double> ts(x);
    ts.push_back(1.0);
    double best = 0;
    for (double t : ts) {
        double below = 0, upto = 0;
        for (double y : x) {
            below += y < t;
            upto += y <= t;
        }
        best = std::max({best, std::abs(below / N - t), std::abs(upto / N - t)});
    }
    return best;
}

Outcome star_oracle() {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> pts(1 + rng() % 64);
        for (auto& p : pts) p = u(rng);
        worst = std::max(worst, std::abs(star_discrepancy(pts) - brute_star(pts)));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "200 sets, max difference %.2e", worst);
    return {worst <= 1e-12, buf};
}

// ------------------------------------------------------------------ 10
Outcome normal_trend() {
    Schedule s;
    s.b = 2;
    s.primes = PrimeSet({3});
    s.c = SequenceSpec::geometric_of(3, 3);
    s.m = SequenceSpec::geometric_of(2, 2);
    const DiscrepancyTrace t = discrepancy_trace(s, u64{1} << 17);
    double at10 = -1, at17 = -1;
    for (const auto& p : t.points) {
        if (p.N == (u64{1} << 10)) at10 = p.star;
        if (p.N == (u64{1} << 17)) at17 = p.star;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "D*(2^10) = %.5f, D*(2^17) = %.5f", at10, at17);
    return {at10 >= 0 && at17 >= 0 && at17 < at10 && at17 < 0.05, buf};
}

// ------------------------------------------------------------------ 11
Outcome digit_sanity() {
    const u64 m = 390625;
    const u64 T = mult_order(2, m);
    double worst = 0;
    for (unsigned k = 1; k <= 3; ++k) {
        const auto h = pattern_histogram(1, m, 2, k, T);
        if (std::accumulate(h.begin(), h.end(), u64{0}) != T)
            return {false, "counts for k=" + std::to_string(k) + " do not sum to N"};
        if (k == 1)
            for (u64 c : h) worst = std::max(worst, std::abs(static_cast<double>(c) / (T / 2.0) - 1));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "N = %llu, max single-digit deviation %.4f%%", static_cast<unsigned long long>(T),
                  100 * worst);
    return {worst <= 0.05, buf};
}

// ------------------------------------------------------------------ 12
Outcome determinism() {
    const ScanConfig c = load_scan_config(KOROSUM_CONFIG_DIR "/scan.json");
    const std::string one = render_csv(run_scan(c, 1));
    const std::string eight = render_csv(run_scan(c, 8));
    return {one == eight, std::to_string(one.size()) + " bytes, " +
                              std::to_string(std::count(one.begin(), one.end(), '\n') - 1) + " rows"};
}

struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const Criterion all[] = {
        {"interval table", 1, interval_table},
        {"limit constant", 1, limit_constant_check},
        {"direct-calculation decimals", 1, decimals},
        {"order structure", 60, order_structure},
        {"differencing fuzz", 300, differencing_fuzz},
        {"bound validity sweep", 600, bound_sweep},
        {"gcd structure", 120, claim_two},
        {"exact identities", 1, identities},
        {"star discrepancy oracle", 10, star_oracle},
        {"normal-number trend", 120, normal_trend},
        {"digit statistics", 60, digit_sanity},
        {"scan determinism", 60, determinism},
    };
    int failed = 0;
    int idx = 0;
    for (const Criterion& c : all) {
        ++idx;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool ok = o.ok && in_time;
        failed += !ok;
        std::printf("%s %2d %-28s %8.3fs / %gs  %s%s\n", ok ? "PASS" : "FAIL", idx, c.name, secs, c.budget_s,
                    o.detail.c_str(), in_time ? "" : " [over budget]");
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", idx - failed, idx);
    return failed == 0 ? 0 : 1;
}
