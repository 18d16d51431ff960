#pragma once

// JSON configuration documents for scans and normal-number schedules.
// Errors carry the path of the offending field, e.g. "a_policy.count".

#include <string>
#include <string_view>
#include <vector>

#include "korosum/normalnum.hpp"
#include "korosum/sumeval.hpp"

namespace korosum {

struct APolicy {
    enum class Kind { fixed, sample, worst_case };
    Kind kind = Kind::fixed;
    std::vector<i64> values;  // fixed
    u64 count = 1;            // sample, worst_case
};

struct NPolicy {
    enum class Kind { list, powers, period };
    Kind kind = Kind::list;
    std::vector<u64> values;         // list
    std::vector<double> exponents;   // powers: N = ceil(m^x)
    std::vector<u64> multiples{1};   // period: N = j ord(b, m)
};

struct ScanConfig {
    std::vector<u64> primes;
    u64 b = 2;
    u64 m_min = 2;
    u64 m_max = 2;
    APolicy a_policy;
    NPolicy n_policy;
    unsigned k_min = 0;
    unsigned k_max = 4;
    u64 seed = 1;
    unsigned workers = 1;
    std::string output_path;
    std::string format = "csv";
};

ScanConfig parse_scan_config(std::string_view json_text);
ScanConfig load_scan_config(const std::string& path);

Schedule parse_schedule(std::string_view json_text);
Schedule load_schedule(const std::string& path);

/// Whole file as a string; ConfigError naming the path on failure.
std::string read_text_file(const std::string& path);

}  // namespace korosum
