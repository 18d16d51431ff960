#pragma once

// Parameter sweeps: every (m, a, N) cell of a config gets its empirical sum
// and all applicable bounds. Output order and bytes do not depend on the
// number of workers.

#include <optional>
#include <string>
#include <vector>

#include "korosum/config.hpp"

namespace korosum {

struct ScanRow {
    u64 m = 0;
    i64 a = 0;
    u64 N = 0;
    unsigned k_star = 0;
    double abs_sum = 0.0;
    double ratio = 0.0;  // |S_N| / N
    double bound_recursive = 0.0;  // at k_star
    double bound_main = 0.0;       // at k_star
    double bound_baseline = 0.0;   // long-sum bound, k = 0
    std::optional<double> bound_short;    // when N <= ord(b, m)
    std::optional<double> bound_korobov;  // odd prime-power m, advisory
    bool nontrivial_recursive = false;
    bool nontrivial_main = false;

    bool operator==(const ScanRow&) const = default;
};

/// Relative slack when comparing sums with bounds.
inline constexpr double kScanSlack = 1e-6;

/// Moduli of the sweep: P-smooth m in the range, m >= 2.
std::vector<u64> scan_moduli(const ScanConfig& config);

/// Units a used for modulus m, ascending.
std::vector<i64> scan_numerators(const ScanConfig& config, u64 m);

/// Term counts used for modulus m, ascending and distinct.
std::vector<u64> scan_lengths(const ScanConfig& config, u64 m);

/// Runs the sweep with `workers` threads (0: the config's value). A sum that
/// exceeds a proven bound raises BoundViolation with the offending cell.
std::vector<ScanRow> run_scan(const ScanConfig& config, unsigned workers = 0);

}  // namespace korosum
