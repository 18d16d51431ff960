#pragma once

#include "korosum/kernels.hpp"

namespace korosum::kernels::detail {

inline u64 mulmod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

/// One lag correlation of the residue stream, phases from the table when given.
cplx lag_sum(std::span<const u64> residues, u64 m, u64 lag, const PhaseTable* table);
bool use_table(std::span<const u64> residues, u64 m, u64 tau);

}  // namespace korosum::kernels::detail
