#include "korosum/kernels.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "kernels_detail.hpp"

namespace korosum::kernels {

namespace {

using u128 = unsigned __int128;
using detail::mulmod;

template <typename T>
T pairwise(std::span<const T> v) noexcept {
    if (v.size() <= 8) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise(v.first(half)) + pairwise(v.subspan(half));
}

// Work above which a full residue table is cheaper than direct sin/cos.
bool table_pays_off(u64 m, u64 work) noexcept {
    return m <= (u64{1} << 24) && work >= m / 2;
}

}  // namespace

cplx unit_root(u64 r, u64 m) noexcept {
    // Nearest quarter turn q, then a residual angle in [-pi/4, pi/4].
    const u128 four_r = static_cast<u128>(r % m) * 4;
    const u64 q = static_cast<u64>((four_r + m / 2) / m);
    const auto rem = static_cast<double>(static_cast<__int128>(four_r) -
                                         static_cast<__int128>(static_cast<u128>(q) * m));
    const double theta = rem / static_cast<double>(m) * (std::numbers::pi / 2);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    switch (q % 4) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

PhaseTable::PhaseTable(u64 m) : m_(m), table_(m) {
    for (u64 r = 0; r < m; ++r) table_[r] = unit_root(r, m);
}

double pairwise_sum(std::span<const double> values) noexcept { return pairwise(values); }
cplx pairwise_sum(std::span<const cplx> values) noexcept { return pairwise(values); }

cplx orbit_sum_serial(u64 start, u64 b, u64 m, u64 count) {
    CompensatedSum acc;
    u64 r = start % m;
    const u64 bm = b % m;
    for (u64 t = 0; t < count; ++t) {
        acc.add(unit_root(r, m));
        r = mulmod(r, bm, m);
    }
    return acc.value();
}

std::vector<cplx> orbit_prefix_sums(u64 start, u64 b, u64 m, std::span<const u64> checkpoints) {
    std::vector<cplx> out;
    out.reserve(checkpoints.size());
    CompensatedSum acc;
    u64 r = start % m;
    const u64 bm = b % m;
    u64 done = 0;
    for (u64 target : checkpoints) {
        for (; done < target; ++done) {
            acc.add(unit_root(r, m));
            r = mulmod(r, bm, m);
        }
        out.push_back(acc.value());
    }
    return out;
}

namespace detail {

cplx lag_sum(std::span<const u64> residues, u64 m, u64 lag, const PhaseTable* table) {
    CompensatedSum acc;
    const std::size_t len = residues.size() - lag;
    for (std::size_t n = 0; n < len; ++n) {
        const u64 hi = residues[n + lag];
        const u64 lo = residues[n];
        const u64 r = hi >= lo ? hi - lo : hi + (m - lo);
        acc.add(table ? (*table)[r] : unit_root(r, m));
    }
    return acc.value();
}

bool use_table(std::span<const u64> residues, u64 m, u64 tau) {
    const u64 n = residues.size();
    if (tau >= n) return false;
    const u64 lags = (n - 1) / tau;
    return table_pays_off(m, lags * (n - tau * (lags + 1) / 2));
}

}  // namespace detail

std::vector<double> lag_sum_magnitudes_serial(std::span<const u64> residues, u64 m, u64 tau) {
    std::vector<double> out;
    if (tau == 0 || residues.empty()) return out;
    std::unique_ptr<PhaseTable> table;
    if (detail::use_table(residues, m, tau)) table = std::make_unique<PhaseTable>(m);
    for (u64 lag = tau; lag < residues.size(); lag += tau)
        out.push_back(std::abs(detail::lag_sum(residues, m, lag, table.get())));
    return out;
}

}  // namespace korosum::kernels
