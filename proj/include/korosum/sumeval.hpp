#pragma once

// Korobov-type sums S_N = sum_{n=1}^N e(a b^n / m) and empirical checks of
// the differencing inequality and the gcd structure behind it.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "korosum/numtheory.hpp"

namespace korosum {

using i64 = std::int64_t;

enum class Exec { serial, parallel };

struct SumResult {
    std::complex<double> value;
    double magnitude = 0.0;
    u64 N = 0;
    u64 m = 1;
    i64 a = 0;
    u64 b = 2;
};

/// Phases come from exact residues a b^n mod m; summation is compensated.
SumResult eval_sum(i64 a, u64 b, u64 m, u64 N, Exec exec = Exec::parallel);

/// Same sum as q * S_T + S_r with T = ord(b, m) and N = qT + r.
SumResult eval_sum_reduced(i64 a, u64 b, u64 m, u64 N, Exec exec = Exec::parallel);

/// S_N for every N in an ascending list, from a single pass.
std::vector<std::complex<double>> eval_sum_prefixes(i64 a, u64 b, u64 m, std::span<const u64> Ns);

/// Reduces a into [0, m).
u64 reduce_numerator(i64 a, u64 m) noexcept;

/// m' = Q prod p_i^{floor(x l_i)}, with the exponent of 2 raised to at least
/// one when 4 | m. Throws DegenerateRange when x is not in (0, 1).
u64 choose_m_prime(u64 m, u64 N, const PrimeSet& primes, const mpq_class& alpha,
                   const mpq_class& gamma, const mpq_class& nu);

/// The target value m^x = m^{alpha/(1+alpha)} N^{(1+gamma-nu)/(1+alpha)}.
double m_prime_target(u64 m, u64 N, const mpq_class& alpha, const mpq_class& gamma,
                      const mpq_class& nu);

/// m' | m, every prime of m divides m', and 4 | m implies 4 | m'.
bool is_admissible_m_prime(u64 m, u64 m_prime);

/// gcd(b^tau - 1, m) with tau = ord(b, m').
u64 m_bar(u64 b, u64 m, u64 m_prime);

struct DifferencingReport {
    double lhs_squared = 0.0;
    double rhs = 0.0;
    u64 m_prime = 1;
    u64 tau = 1;
    bool holds = false;
};

inline constexpr double kInequalitySlack = 1e-9;

DifferencingReport verify_differencing(i64 a, u64 b, u64 m, u64 m_prime, u64 N,
                                       Exec exec = Exec::parallel);

struct ClaimReport {
    u64 m_bar = 1;
    u64 tau = 1;
    bool order_preserved = false;   ///< ord(b, m_bar) = ord(b, m')
    bool gcd_structure = false;     ///< gcd(b^{i tau} - 1, m) = m_bar gcd(i, m / m_bar)
    u64 first_gcd_failure = 0;      ///< offending i, 0 when none
    bool divides_capital_m = false; ///< (m_bar / m') | M and m_bar <= M m'
};

/// Checks the three gcd-structure claims for one (b, m, m') with i <= i_max.
ClaimReport check_claims(u64 b, u64 m, u64 m_prime, const mpz_class& capital, u64 i_max);

}  // namespace korosum
