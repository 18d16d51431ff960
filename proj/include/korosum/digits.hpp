#pragma once

// Base-b digit statistics of a rational a/m with gcd(b, m) = 1, whose
// expansion 0.a_1 a_2 a_3 ... is purely periodic with period ord(b, m).

#include <string>
#include <vector>

#include "korosum/numtheory.hpp"

namespace korosum {

struct DigitPattern {
    u64 base = 10;
    std::vector<unsigned> digits;

    /// Parses "142" style strings; for bases above 10, digits are separated by
    /// commas ("3,11,0").
    static DigitPattern parse(const std::string& text, u64 base);
    std::string to_string() const;
};

/// a_n = floor(b (a b^{n-1} mod m) / m).
unsigned digit_at(u64 a, u64 m, u64 b, u64 n);

struct OccurrenceReport {
    u64 count = 0;
    double expected = 0.0;  // N / b^k
    double deviation = 0.0;
    u64 N = 0;
    DigitPattern pattern;
};

/// Number of start positions n in [1, N] with a_{n-1+i} = d_i for all i.
/// Matches may run past position N.
OccurrenceReport count_occurrences(u64 a, u64 m, const DigitPattern& pattern, u64 N);

/// Counts for every length-k pattern at once, indexed by the pattern read
/// as a base-b number. Requires b^k <= 2^24.
std::vector<u64> pattern_histogram(u64 a, u64 m, u64 b, unsigned k, u64 N);

struct DeviationReport {
    OccurrenceReport occurrences;
    double envelope = 0.0;  // N exp(-c_hat (log log m)^{3/2})
    double ratio = 0.0;     // |deviation| / envelope
    double c_hat = 1.0;
};

/// The envelope's constant is not known, so ratio is descriptive only.
DeviationReport deviation_report(u64 a, u64 m, const DigitPattern& pattern, u64 N,
                                 const PrimeSet& primes, double c_hat = 1.0);

}  // namespace korosum
