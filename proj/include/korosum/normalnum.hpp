#pragma once

// Normal-number candidates alpha = sum_k 1/(c_k b^{m_k}), the exact ancillary
// sequence standing in for {b^n alpha}, and discrepancy measurements.

#include <cstddef>
#include <string>
#include <vector>

#include "korosum/numtheory.hpp"

namespace korosum {

/// A positive integer sequence s_1, s_2, ... given by a rule.
struct SequenceSpec {
    enum class Kind { list, geometric, linear };
    Kind kind = Kind::geometric;
    std::vector<u64> values;  // list
    u64 first = 1;
    u64 step = 1;  // ratio for geometric, increment for linear

    static SequenceSpec list_of(std::vector<u64> v);
    static SequenceSpec geometric_of(u64 first, u64 ratio);
    static SequenceSpec linear_of(u64 first, u64 step);

    /// s_k for k >= 1; throws ScheduleViolation when undefined or too large.
    u64 at(std::size_t k, const std::string& name) const;
};

struct Schedule {
    u64 b = 2;
    PrimeSet primes{std::vector<u64>{3}};
    SequenceSpec c;  // denominators
    SequenceSpec m;  // exponents
    double epsilon = 0.1;

    u64 c_at(std::size_t k) const { return c.at(k, "c"); }
    u64 m_at(std::size_t k) const { return m.at(k, "m"); }
};

struct ScheduleValidation {
    std::size_t horizon = 0;
    /// log of exp((1+eps) log c_k / log log c_k) / mu_k, k = 1..K. NaN when
    /// c_k <= e makes log log c_k non-positive.
    std::vector<double> log_ratio;
    std::size_t decreasing_steps = 0;
    bool trend_decreasing = false;  // last value below the mid-horizon value
};

/// Structural hypotheses are enforced (ScheduleViolation); the ratio trend
/// is only reported, since the real hypothesis is a limit.
ScheduleValidation validate_schedule(const Schedule& s, std::size_t K);

/// x_n = num/den exactly; den is c_k inside block k and 1 before the first.
struct AncillaryPoint {
    u64 num = 0;
    u64 den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Streams x_0, x_1, ... of the ancillary sequence.
class AncillaryStream {
public:
    explicit AncillaryStream(const Schedule& s);
    AncillaryPoint next();
    u64 position() const noexcept { return n_; }
    std::size_t block() const noexcept { return k_; }

private:
    void enter_next_block();

    const Schedule& s_;
    u64 n_ = 0;        // index of the next point
    std::size_t k_ = 0;
    u64 c_ = 1;        // c_k
    u64 a_ = 0;        // a_k
    u64 r_ = 0;        // a_k b^j mod c_k
    u64 next_start_;   // m_{k+1}
};

/// x_0 .. x_N.
std::vector<AncillaryPoint> ancillary_sequence(const Schedule& s, u64 N);

/// D*_N = max_i max(i/N - x_(i), x_(i) - (i-1)/N). The two-sided
/// discrepancy D_N lies in [D*, 2 D*].
double star_discrepancy(std::vector<double> points);

/// 3 (1/M + sum_{h=1}^M (1/h) |(1/J) sum_{j<J} e(h a b^j / c)|).
double erdos_turan_estimate(u64 a, u64 c, u64 b, u64 J, u64 M);

struct TracePoint {
    u64 N = 0;
    double star = 0.0;
};

struct DiscrepancyTrace {
    std::vector<TracePoint> points;
    std::size_t decreasing_steps = 0;
    bool final_below_first = false;
};

/// D* of x_0..x_{N-1} at N = 2^j <= N_max (from N = 2).
DiscrepancyTrace discrepancy_trace(const Schedule& s, u64 n_max);

struct AlphaDigits {
    std::vector<unsigned> digits;  // after the radix point
    std::size_t terms = 0;         // series terms summed
};

/// Base-b digits of the series truncated once the tail is below b^{-(n+2)}.
AlphaDigits alpha_digits(const Schedule& s, std::size_t n_digits);

}  // namespace korosum
