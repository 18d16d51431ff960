#include <memory>

#include <omp.h>

#include "kernels_detail.hpp"
#include "korosum/numtheory.hpp"

namespace korosum::kernels {

cplx orbit_sum_omp(u64 start, u64 b, u64 m, u64 count) {
    const u64 blocks = (count + kBlock - 1) / kBlock;
    if (blocks <= 1) return orbit_sum_serial(start, b, m, count);
    std::vector<cplx> partial(blocks);
    const u64 step = mod_pow(b, kBlock, m);
    const auto nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t blk = 0; blk < nblocks; ++blk) {
        const u64 first = static_cast<u64>(blk) * kBlock;
        const u64 len = std::min(kBlock, count - first);
        const u64 r0 = detail::mulmod(start % m, mod_pow(step, static_cast<u64>(blk), m), m);
        partial[blk] = orbit_sum_serial(r0, b, m, len);
    }
    return pairwise_sum(std::span<const cplx>(partial));
}

std::vector<double> lag_sum_magnitudes_omp(std::span<const u64> residues, u64 m, u64 tau) {
    if (tau == 0 || residues.empty() || tau >= residues.size()) return {};
    std::unique_ptr<PhaseTable> table;
    if (detail::use_table(residues, m, tau)) table = std::make_unique<PhaseTable>(m);
    const auto lags = static_cast<std::int64_t>((residues.size() - 1) / tau);
    std::vector<double> out(static_cast<std::size_t>(lags));
    // Short lags carry the most work; dynamic keeps threads balanced.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < lags; ++i) {
        const u64 lag = static_cast<u64>(i + 1) * tau;
        out[static_cast<std::size_t>(i)] = std::abs(detail::lag_sum(residues, m, lag, table.get()));
    }
    return out;
}

}  // namespace korosum::kernels
