#pragma once

// The recursive bound system: exact-rational exponents, round-up constants,
// the limit constant c, the intervals I_k and their optimal sub-ranges.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "korosum/certified.hpp"
#include "korosum/numtheory.hpp"

namespace korosum {

/// [lo, hi] with exact endpoints; hi may be +infinity.
struct RationalInterval {
    mpq_class lo;
    mpq_class hi;
    bool hi_infinite = false;

    bool contains(const mpq_class& x) const { return lo <= x && (hi_infinite || x <= hi); }
    bool contains_interior(const mpq_class& x) const { return lo < x && (hi_infinite || x < hi); }
    /// `other` lies inside this interval and touches neither endpoint.
    bool strictly_contains(const RationalInterval& other) const;
    std::string to_string() const;
};

struct ExponentState {
    unsigned k = 0;
    mpq_class alpha;
    mpq_class gamma;
    mpq_class nu;
    mpq_class c_gamma;  // 2^{k+2}(1 - gamma) - (k + 3)
    mpq_class c_nu;     // 2^{k+2}(nu - 1) - (k - 1)
};

/// Levels 0..k_max of the exponent recursion.
std::vector<ExponentState> exponent_table(unsigned k_max);
ExponentState exponents(unsigned k);

/// c enclosed as [estimate - tail, estimate + tail], with estimate = eps'_K.
struct LimitConstant {
    std::vector<mpq_class> epsilon_prime;  // eps'_0 .. eps'_K
    mpq_class estimate;
    mpq_class tail;  // (K + 7) / 2^{K-1}

    unsigned levels() const { return static_cast<unsigned>(epsilon_prime.size() - 1); }
    mpq_class lo() const { return estimate - tail; }
    mpq_class hi() const { return estimate + tail; }
    double value() const;
    double tail_bound() const;
};

/// Runs the eps' recursion to k_max, then further until the tail is <= tol.
LimitConstant epsilon_prime_and_c(unsigned k_max, double tol = 1.0);

/// Shared enclosure at K = 120.
const LimitConstant& limit_constant();

/// I_k = [alpha/(1-gamma), alpha/(nu-1)].
RationalInterval nontrivial_interval(unsigned k);

/// Optimal range [1/(k+c+2), 1/(k+c+1)] for k >= 1. Each endpoint is only
/// known to lie in a small interval because c is.
struct OptimalRange {
    RationalInterval lo_range;
    RationalInterval hi_range;

    /// Smallest interval sure to contain the optimal range.
    RationalInterval outer() const { return {lo_range.lo, hi_range.hi, false}; }
};

std::optional<OptimalRange> optimal_range(unsigned k);

/// min(delta_1, delta_2) for a sub-interval of I_k sharing no endpoint.
mpq_class delta_of_subinterval(unsigned k, const RationalInterval& sub);

/// alpha_k (k + c + 2) + gamma_k - 1 and -alpha_k (k + c + 1) + nu_k - 1,
/// each as the worst case over the enclosure of c.
mpq_class gamma_side_exponent(unsigned k, const LimitConstant& c);
mpq_class nu_side_exponent(unsigned k, const LimitConstant& c);
/// The same quantities at the point estimate of c.
double gamma_side_decimal(unsigned k);
double nu_side_decimal(unsigned k);

struct KConstants {
    cert::Real K1, K2, K3;
};

KConstants k_constants(const PrimeSet& primes, u64 b);

struct ConstantState {
    unsigned k = 0;
    cert::Real A, B;          // upper values
    cert::Real a_cap, b_cap;  // closed-form ceilings on A_k, B_k
};

enum class BoundForm { recursive, main };

struct BoundReport {
    u64 m = 1;
    u64 N = 1;
    unsigned k = 0;
    double bound_value = 0.0;  // +inf when it does not fit a double
    double term_main = 0.0;
    double term_secondary = 0.0;
    double log_factor = 1.0;
    bool nontrivial = false;  // bound_value < N
    /// log N / log m lies in I_k: the exponents beat N, whatever the constants.
    bool in_nontrivial_range = false;
    std::string source;
};

/// Tables for one (P, b) up to level k_max. Immutable after construction.
class BoundSystem {
public:
    BoundSystem(PrimeSet primes, u64 b, unsigned k_max = 30);

    const PrimeSet& primes() const noexcept { return primes_; }
    u64 base() const noexcept { return b_; }
    unsigned k_max() const noexcept { return k_max_; }
    const mpz_class& capital_m() const noexcept { return M_; }
    const ExponentState& exponents(unsigned k) const;
    const ConstantState& constants(unsigned k) const;
    const KConstants& k_constants() const noexcept { return K_; }

    BoundReport bound_eval(u64 m, u64 N, unsigned k, BoundForm form = BoundForm::recursive) const;

    /// Short sum: sqrt(m/d)(1 + log(m/d)), valid for N <= ord(b, m) when
    /// d = 1 or d < m/m_1. RangeViolation otherwise.
    BoundReport bound_short(u64 m, u64 N, u64 d) const;
    /// Long sum: (m^{1/2} + M m^{-1/2} N)(1 + log m).
    BoundReport bound_long(u64 m, u64 N) const;

    struct BestK {
        unsigned k = 0;
        unsigned heuristic_k = 0;  // from optimal-range membership
        BoundReport report;
    };
    /// Exhaustive argmin over 0..k_max of the recursive bound; ties to smaller k.
    BestK best_k(u64 m, u64 N, unsigned k_max) const;

private:
    void check_level(unsigned k) const;

    PrimeSet primes_;
    u64 b_;
    unsigned k_max_;
    mpz_class M_;
    std::vector<ExponentState> exps_;
    std::vector<ConstantState> consts_;
    KConstants K_;
};

/// The level k-hat whose optimal range contains log N / log m, or 0.
unsigned heuristic_level(u64 m, u64 N);

/// Korobov's prime-power estimate 3N exp(-g (log N)^3 / (log p^alpha)^2)
/// with g = 1/(2 10^6). Its hypotheses cannot be checked here: advisory only.
double bound_korobov_prime(u64 p, unsigned alpha_exp, u64 N);

struct CorollaryConstants {
    unsigned k = 0;
    std::vector<RationalInterval> partition;  // J_1..J_k, top down
    mpq_class delta;
    cert::Real C;  // 2 K1 K2^k K3
};

/// Constants for |S_N| <= C m^{-delta} N (1 + log m) when N >= m^eps.
CorollaryConstants corollary_constants(const mpq_class& epsilon, const PrimeSet& primes, u64 b);

/// log m / (log2 log m - 3 log2 log log m), the log of the smallest N the
/// combined theorem covers; +inf while the denominator is not positive.
double secondary_threshold_log(double log_m);
/// exp(-c_hat (log log m)^{3/2}).
double secondary_decay(double log_m, double c_hat);

}  // namespace korosum
