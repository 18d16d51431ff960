#include "korosum/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <random>

#include <omp.h>

#include "korosum/bounds.hpp"

namespace korosum {

std::vector<u64> scan_moduli(const ScanConfig& config) {
    return smooth_numbers(std::max<u64>(config.m_min, 2), config.m_max, PrimeSet(config.primes));
}

std::vector<i64> scan_numerators(const ScanConfig& config, u64 m) {
    const APolicy& ap = config.a_policy;
    std::vector<i64> out;
    if (ap.kind == APolicy::Kind::fixed) {
        for (i64 a : ap.values)
            if (std::gcd(reduce_numerator(a, m), m) == 1) out.push_back(a);
        return out;
    }
    if (euler_phi(m) <= ap.count) {
        for (u64 a = 1; a < m; ++a)
            if (std::gcd(a, m) == 1) out.push_back(static_cast<i64>(a));
        return out;
    }
    // One generator per modulus, so the draw does not depend on scheduling.
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(m >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<u64> pick(1, m - 1);
    while (out.size() < ap.count) {
        const u64 a = pick(rng);
        if (std::gcd(a, m) != 1) continue;
        if (std::find(out.begin(), out.end(), static_cast<i64>(a)) != out.end()) continue;
        out.push_back(static_cast<i64>(a));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<u64> scan_lengths(const ScanConfig& config, u64 m) {
    const NPolicy& np = config.n_policy;
    std::vector<u64> out;
    switch (np.kind) {
        case NPolicy::Kind::list:
            out = np.values;
            break;
        case NPolicy::Kind::powers:
            for (double x : np.exponents)
                out.push_back(std::max<u64>(1, static_cast<u64>(std::ceil(std::pow(static_cast<double>(m), x)))));
            break;
        case NPolicy::Kind::period: {
            const u64 t = mult_order(config.b, m);
            for (u64 j : np.multiples) out.push_back(j * t);
            break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Bounds for one (m, N) cell; independent of a.
struct CellBounds {
    std::vector<BoundReport> recursive;  // k_min..k_max
    std::vector<BoundReport> main;
    unsigned k_star = 0;
    double baseline = 0.0;
    std::optional<double> short_sum;
    std::optional<double> korobov;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void violation(u64 m, i64 a, u64 N, const std::string& which, double sum, double bound) {
    throw BoundViolation("bound violated: m=" + std::to_string(m) + " a=" + std::to_string(a) +
                         " N=" + std::to_string(N) + " bound=" + which + " |S_N|=" + fmt(sum) +
                         " value=" + fmt(bound));
}

CellBounds cell_bounds(const BoundSystem& sys, const ScanConfig& config, u64 m, u64 N, u64 order,
                       std::optional<PrimePower> prime_power) {
    CellBounds cb;
    double best = 0.0;
    for (unsigned k = config.k_min; k <= config.k_max; ++k) {
        BoundReport rec = sys.bound_eval(m, N, k, BoundForm::recursive);
        BoundReport mai = sys.bound_eval(m, N, k, BoundForm::main);
        if (rec.bound_value > mai.bound_value)
            throw BoundViolation("recursive bound above main form at m=" + std::to_string(m) +
                                 " N=" + std::to_string(N) + " k=" + std::to_string(k));
        if (k == config.k_min || rec.bound_value < best) {
            best = rec.bound_value;
            cb.k_star = k;
        }
        cb.recursive.push_back(std::move(rec));
        cb.main.push_back(std::move(mai));
    }
    cb.baseline = sys.bound_long(m, N).bound_value;
    if (N <= order) cb.short_sum = sys.bound_short(m, N, 1).bound_value;
    if (prime_power && N >= 2) cb.korobov = bound_korobov_prime(prime_power->prime, prime_power->exponent, N);
    return cb;
}

void check_row(const ScanConfig& config, const CellBounds& cb, u64 m, i64 a, u64 N, double s) {
    const double slack = 1.0 + kScanSlack;
    for (unsigned k = config.k_min; k <= config.k_max; ++k) {
        const double r = cb.recursive[k - config.k_min].bound_value;
        if (s > r * slack) violation(m, a, N, "recursive k=" + std::to_string(k), s, r);
        const double mm = cb.main[k - config.k_min].bound_value;
        if (s > mm * slack) violation(m, a, N, "main k=" + std::to_string(k), s, mm);
    }
    if (s > cb.baseline * slack) violation(m, a, N, "long-sum", s, cb.baseline);
    if (cb.short_sum && s > *cb.short_sum * slack) violation(m, a, N, "short-sum", s, *cb.short_sum);
}

ScanRow make_row(const CellBounds& cb, const ScanConfig& config, u64 m, i64 a, u64 N, double s) {
    ScanRow row;
    row.m = m;
    row.a = a;
    row.N = N;
    row.k_star = cb.k_star;
    row.abs_sum = s;
    row.ratio = s / static_cast<double>(N);
    const BoundReport& rec = cb.recursive[cb.k_star - config.k_min];
    const BoundReport& mai = cb.main[cb.k_star - config.k_min];
    row.bound_recursive = rec.bound_value;
    row.bound_main = mai.bound_value;
    row.bound_baseline = cb.baseline;
    row.bound_short = cb.short_sum;
    row.bound_korobov = cb.korobov;
    row.nontrivial_recursive = rec.nontrivial;
    row.nontrivial_main = mai.nontrivial;
    return row;
}

std::vector<ScanRow> scan_modulus(const BoundSystem& sys, const ScanConfig& config, u64 m) {
    const std::vector<i64> as = scan_numerators(config, m);
    const std::vector<u64> Ns = scan_lengths(config, m);
    const u64 order = mult_order(config.b, m);

    std::optional<PrimePower> prime_power;
    if (const auto f = factorize(m); f.size() == 1 && f.front().prime % 2 == 1) prime_power = f.front();

    std::vector<CellBounds> cells;
    cells.reserve(Ns.size());
    for (u64 N : Ns) cells.push_back(cell_bounds(sys, config, m, N, order, prime_power));

    // |S_N| for every (a, N), one pass per a; serial kernels keep the bytes
    // independent of the thread layout.
    std::vector<std::vector<double>> sums;
    sums.reserve(as.size());
    for (i64 a : as) {
        const auto prefix = eval_sum_prefixes(a, config.b, m, Ns);
        std::vector<double> mags;
        for (const auto& v : prefix) mags.push_back(std::abs(v));
        sums.push_back(std::move(mags));
    }

    std::vector<ScanRow> rows;
    if (config.a_policy.kind == APolicy::Kind::worst_case) {
        for (std::size_t j = 0; j < Ns.size(); ++j) {
            std::size_t worst = 0;
            for (std::size_t i = 0; i < as.size(); ++i) {
                check_row(config, cells[j], m, as[i], Ns[j], sums[i][j]);
                if (sums[i][j] > sums[worst][j]) worst = i;
            }
            if (!as.empty()) rows.push_back(make_row(cells[j], config, m, as[worst], Ns[j], sums[worst][j]));
        }
        return rows;
    }
    for (std::size_t i = 0; i < as.size(); ++i)
        for (std::size_t j = 0; j < Ns.size(); ++j) {
            check_row(config, cells[j], m, as[i], Ns[j], sums[i][j]);
            rows.push_back(make_row(cells[j], config, m, as[i], Ns[j], sums[i][j]));
        }
    return rows;
}

}  // namespace

std::vector<ScanRow> run_scan(const ScanConfig& config, unsigned workers) {
    if (workers == 0) workers = config.workers;
    if (workers == 0) workers = static_cast<unsigned>(omp_get_max_threads());
    const BoundSystem sys(PrimeSet(config.primes), config.b, config.k_max);
    const std::vector<u64> moduli = scan_moduli(config);

    std::vector<std::vector<ScanRow>> per_m(moduli.size());
    std::vector<std::exception_ptr> errors(moduli.size());
    const auto count = static_cast<long>(moduli.size());
#pragma omp parallel for num_threads(static_cast<int>(workers)) schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        try {
            per_m[i] = scan_modulus(sys, config, moduli[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<ScanRow> rows;
    for (auto& block : per_m) rows.insert(rows.end(), block.begin(), block.end());
    return rows;
}

}  // namespace korosum
