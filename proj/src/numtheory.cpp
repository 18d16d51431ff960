#include "korosum/numtheory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "korosum/certified.hpp"

namespace korosum {

namespace {

using u128 = unsigned __int128;

bool mul_overflows(u64 a, u64 b, u64* out) { return __builtin_mul_overflow(a, b, out); }

void require_coprime(u64 b, u64 m) {
    if (std::gcd(b, m) != 1) throw NotCoprime(b, m);
}

}  // namespace

// ---------------------------------------------------------------- PrimeSet

PrimeSet::PrimeSet(std::vector<u64> primes) : primes_(std::move(primes)) {
    if (primes_.empty()) throw InvalidPrimeSet("prime set must not be empty");
    std::sort(primes_.begin(), primes_.end());
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i]))
            throw InvalidPrimeSet(std::to_string(primes_[i]) + " is not prime");
        if (i > 0 && primes_[i] == primes_[i - 1])
            throw InvalidPrimeSet("duplicate prime " + std::to_string(primes_[i]));
        if (mul_overflows(product_, primes_[i], &product_))
            throw InvalidPrimeSet("product of primes overflows 64 bits");
    }
}

bool PrimeSet::contains(u64 p) const noexcept {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

unsigned SmoothFactorization::exponent_of(u64 p) const noexcept {
    for (const auto& f : factors)
        if (f.prime == p) return f.exponent;
    return 0;
}

// ------------------------------------------------------- modular arithmetic

u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 mod_pow(u64 b, u64 e, u64 m) noexcept {
    if (m == 1) return 0;
    u64 result = 1;
    b %= m;
    while (e > 0) {
        if (e & 1) result = mul_mod(result, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return result;
}

u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i)
        if (mul_overflows(r, b, &r)) throw OutOfRange("integer power overflows 64 bits");
    return r;
}

bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

unsigned valuation(u64 n, u64 p) noexcept {
    if (n == 0) return 0;
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<PrimePower> factorize(u64 n) {
    if (n == 0) throw OutOfRange("cannot factor 0");
    std::vector<PrimePower> out;
    for (u64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

u64 radical(u64 n) {
    u64 r = 1;
    for (const auto& f : factorize(n)) r *= f.prime;
    return r;
}

u64 euler_phi(u64 n) {
    u64 phi = n;
    for (const auto& f : factorize(n)) phi = phi / f.prime * (f.prime - 1);
    return phi;
}

u64 carmichael_lambda(u64 n) {
    u64 lambda = 1;
    for (const auto& f : factorize(n)) {
        u64 part;
        if (f.prime == 2) {
            part = f.exponent == 1 ? 1 : f.exponent == 2 ? 2 : ipow(2, f.exponent - 2);
        } else {
            part = ipow(f.prime, f.exponent - 1) * (f.prime - 1);
        }
        lambda = std::lcm(lambda, part);
    }
    return lambda;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (const auto& f : factorize(n)) {
        const std::size_t base = out.size();
        u64 pk = 1;
        for (unsigned e = 1; e <= f.exponent; ++e) {
            pk *= f.prime;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------- smooth numbers

SmoothFactorization factor_smooth(u64 n, const PrimeSet& primes) {
    if (n == 0) throw OutOfRange("factor_smooth requires n >= 1");
    SmoothFactorization f;
    f.n = n;
    u64 rest = n;
    for (u64 p : primes.primes()) {
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    if (rest != 1) throw NotSmooth(n, rest);
    return f;
}

bool is_smooth(u64 n, const PrimeSet& primes) noexcept {
    if (n == 0) return false;
    for (u64 p : primes.primes())
        while (n % p == 0) n /= p;
    return n == 1;
}

std::vector<u64> smooth_numbers(u64 lo, u64 hi, const PrimeSet& primes) {
    std::vector<u64> out{1};
    for (u64 p : primes.primes()) {
        const std::size_t base = out.size();
        for (std::size_t i = 0; i < base; ++i) {
            u64 v = out[i];
            while (v <= hi / p) {
                v *= p;
                out.push_back(v);
            }
        }
    }
    std::erase_if(out, [&](u64 v) { return v < lo || v > hi; });
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------ multiplicative order

u64 mult_order_naive(u64 b, u64 m) {
    if (m == 0) throw OutOfRange("modulus must be positive");
    require_coprime(b, m);
    if (m == 1) return 1;
    const u64 cap = carmichael_lambda(m);
    u64 x = b % m;
    u64 t = 1;
    while (x != 1) {
        x = mul_mod(x, b, m);
        if (++t > cap) throw std::logic_error("multiplicative order exceeded Carmichael bound");
    }
    return t;
}

u64 mult_order(u64 b, u64 m) {
    if (m == 0) throw OutOfRange("modulus must be positive");
    require_coprime(b, m);
    if (m == 1) return 1;
    u64 t = carmichael_lambda(m);
    for (const auto& f : factorize(t)) {
        for (unsigned i = 0; i < f.exponent; ++i) {
            if (mod_pow(b, t / f.prime, m) != 1) break;
            t /= f.prime;
        }
    }
    return t;
}

unsigned valuation_of_power_minus_one(u64 b, u64 n, u64 p) {
    if (n == 0) throw OutOfRange("exponent must be positive");
    if (b % p == 0) throw NotCoprime(b, p);
    if (p == 2) {
        const unsigned base = valuation(b - 1, 2);
        if (n % 2 == 1) return base;
        return base + valuation(b + 1, 2) + valuation(n, 2) - 1;
    }
    const u64 t = mult_order(b % p, p);
    if (n % t != 0) return 0;
    // v_p(b^t - 1) by testing b^t = 1 modulo successive powers of p.
    const mpz_class base(static_cast<unsigned long>(b));
    const mpz_class pz(static_cast<unsigned long>(p));
    mpz_class modulus = pz;
    mpz_class r;
    unsigned v = 0;
    for (;;) {
        modulus *= pz;
        mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), t, modulus.get_mpz_t());
        ++v;
        if (r != 1) break;
    }
    return v + valuation(n / t, p);
}

ModulusStructure mult_order_structured(u64 b, u64 m, const PrimeSet& primes) {
    if (m == 0) throw OutOfRange("modulus must be positive");
    const SmoothFactorization fact = factor_smooth(m, primes);
    require_coprime(b, m);
    ModulusStructure s;
    s.m = m;
    if (m == 1) return s;

    u64 rad = 1;
    for (const auto& f : fact.factors)
        if (f.exponent > 0) rad *= f.prime;
    s.tau1 = mult_order(b, rad);
    s.mu = (m % 2 == 0 && s.tau1 % 2 == 1 && b % 4 == 3) ? 1 : 0;

    const u64 lifted = (s.mu + 1) * s.tau1;
    s.m1 = 1;
    for (const auto& f : fact.factors) {
        if (f.exponent == 0) continue;
        const unsigned beta = valuation_of_power_minus_one(b, lifted, f.prime);
        s.beta.push_back({f.prime, beta});
        s.m1 *= ipow(f.prime, std::min(f.exponent, beta));
    }
    s.tau_prime = (s.mu == 1 && m % 4 == 0) ? 2 * s.tau1 : s.tau1;
    s.order = (m / s.m1) * s.tau_prime;
    return s;
}

mpz_class capital_m(const PrimeSet& primes, u64 b) {
    for (u64 p : primes.primes()) require_coprime(b, p);
    const u64 t = 2 * mult_order(b, primes.product());
    mpz_class result = 1;
    for (u64 p : primes.primes()) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, valuation_of_power_minus_one(b, t, p));
        result *= pk;
    }
    return result;
}

bool capital_m_within_bound(const mpz_class& capital, const PrimeSet& primes, u64 b) {
    using namespace cert;
    const Real lhs = log(from_integer(capital, kUp), kUp);
    const Real rhs = mul(from_u64(2 * primes.product()),
                         log(from_u64(b), kDown), kDown);
    return mpfr_lessequal_p(lhs.get(), rhs.get()) != 0;
}

// -------------------------------------------------------------- divisor sums

double c_p_alpha(const PrimeSet& primes, const mpq_class& alpha) {
    if (alpha <= 0) throw NonPositiveAlpha();
    using namespace cert;
    // p^alpha / (p^alpha - 1) = 1 / (1 - p^-alpha) decreases in alpha.
    const Real neg_alpha = neg(from_rational(alpha, kDown));
    Real product(1.0);
    for (u64 p : primes.primes()) {
        const Real inv = pow(from_u64(p), neg_alpha, kUp);
        const Real den = sub(Real(1.0), inv, kDown);
        product = mul(product, div(Real(1.0), den, kUp), kUp);
    }
    return to_double(product, kUp);
}

double divisor_power_sum(u64 n, const PrimeSet& primes, const mpq_class& alpha) {
    const SmoothFactorization f = factor_smooth(n, primes);
    using namespace cert;
    const Real a = from_rational(alpha, MPFR_RNDN);
    Real product(1.0);
    for (const auto& pf : f.factors) {
        const Real step = pow(from_u64(pf.prime), a, MPFR_RNDN);
        Real term(1.0);
        Real sum(1.0);
        for (unsigned j = 0; j < pf.exponent; ++j) {
            term = mul(term, step, MPFR_RNDN);
            sum = add(sum, term, MPFR_RNDN);
        }
        product = mul(product, sum, MPFR_RNDN);
    }
    return to_double(product, MPFR_RNDN);
}

u64 phi_d(u64 n, u64 d, double x) {
    if (n == 0 || d == 0 || n % d != 0) throw NotDivisor(d, n);
    if (!(x > 0)) throw OutOfRange("phi_d requires x > 0");
    // i = d j with j < x / d and gcd(j, n / d) = 1.
    const double q = x / static_cast<double>(d);
    const double fl = std::floor(q);
    const u64 limit = fl == q ? static_cast<u64>(fl) - 1 : static_cast<u64>(fl);
    if (limit == 0) return 0;

    std::vector<u64> ps;
    for (const auto& f : factorize(n / d)) ps.push_back(f.prime);
    std::int64_t count = 0;
    const std::size_t subsets = std::size_t{1} << ps.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        u64 prod = 1;
        bool too_big = false;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (!(mask >> i & 1)) continue;
            if (mul_overflows(prod, ps[i], &prod) || prod > limit) {
                too_big = true;
                break;
            }
        }
        if (too_big) continue;
        const auto term = static_cast<std::int64_t>(limit / prod);
        count += (std::popcount(mask) % 2 == 0) ? term : -term;
    }
    return static_cast<u64>(count);
}

}  // namespace korosum
