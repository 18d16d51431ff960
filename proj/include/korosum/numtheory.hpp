#pragma once

// Integer number theory over a fixed finite prime set P.
//
// Moduli and residues are 64-bit; products are formed in 128 bits. Values
// that can outgrow 64 bits (M(P), powers b^t) are carried as GMP integers.

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "korosum/errors.hpp"

namespace korosum {

using u64 = std::uint64_t;

struct PrimePower {
    u64 prime = 0;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/// Ascending set of distinct primes p_1 < ... < p_s with product Q.
class PrimeSet {
public:
    /// Sorts the input; throws InvalidPrimeSet on duplicates, composites,
    /// an empty list, or a product that overflows 64 bits.
    explicit PrimeSet(std::vector<u64> primes);

    std::span<const u64> primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }
    u64 product() const noexcept { return product_; }
    bool contains(u64 p) const noexcept;

    bool operator==(const PrimeSet&) const = default;

private:
    std::vector<u64> primes_;
    u64 product_ = 1;
};

/// n = prod p_i^{l_i}, one entry per prime of the set (exponent may be 0).
struct SmoothFactorization {
    u64 n = 1;
    std::vector<PrimePower> factors;

    unsigned exponent_of(u64 p) const noexcept;
};

/// ord(b, m) split as (m / m1) tau' for a P-smooth modulus.
struct ModulusStructure {
    u64 m = 1;
    u64 tau1 = 1;                  ///< ord(b, rad m)
    unsigned mu = 0;
    u64 tau_prime = 1;
    std::vector<PrimePower> beta;  ///< p^beta || b^{(mu+1) tau1} - 1, primes of m only
    u64 m1 = 1;
    u64 order = 1;                 ///< (m / m1) * tau_prime
};

u64 mul_mod(u64 a, u64 b, u64 m) noexcept;
u64 mod_pow(u64 b, u64 e, u64 m) noexcept;
u64 ipow(u64 b, unsigned e);  // throws OutOfRange on overflow

bool is_prime(u64 n) noexcept;
unsigned valuation(u64 n, u64 p) noexcept;

/// Trial-division factorization of an arbitrary n >= 1.
std::vector<PrimePower> factorize(u64 n);
u64 radical(u64 n);
u64 euler_phi(u64 n);
u64 carmichael_lambda(u64 n);
std::vector<u64> divisors(u64 n);

SmoothFactorization factor_smooth(u64 n, const PrimeSet& primes);
bool is_smooth(u64 n, const PrimeSet& primes) noexcept;
/// All P-smooth integers in [lo, hi], ascending.
std::vector<u64> smooth_numbers(u64 lo, u64 hi, const PrimeSet& primes);

/// Least t >= 1 with b^t = 1 (mod m) by direct iteration. Capped at the
/// Carmichael function of m; exceeding the cap is a logic_error.
u64 mult_order_naive(u64 b, u64 m);
/// Same value, found by stripping prime factors from lambda(m).
u64 mult_order(u64 b, u64 m);
ModulusStructure mult_order_structured(u64 b, u64 m, const PrimeSet& primes);

/// v_p(b^n - 1) without forming b^n (lifting the exponent).
unsigned valuation_of_power_minus_one(u64 b, u64 n, u64 p);

/// M(P) = prod p_i^{beta'_i}, p_i^{beta'_i} || b^{2 ord(b,Q)} - 1.
mpz_class capital_m(const PrimeSet& primes, u64 b);
/// M <= b^{2Q}, decided in log space.
bool capital_m_within_bound(const mpz_class& capital, const PrimeSet& primes, u64 b);

/// C_{P,alpha} = prod p^alpha / (p^alpha - 1), rounded upward.
double c_p_alpha(const PrimeSet& primes, const mpq_class& alpha);

/// sum_{d | n} d^alpha for P-smooth n (alpha may be negative).
double divisor_power_sum(u64 n, const PrimeSet& primes, const mpq_class& alpha);

/// #{ i in [1, x) : gcd(i, n) = d }.
u64 phi_d(u64 n, u64 d, double x);

}  // namespace korosum
