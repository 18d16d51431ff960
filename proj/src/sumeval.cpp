#include "korosum/sumeval.hpp"

#include <cmath>
#include <numeric>

#include "korosum/certified.hpp"
#include "korosum/kernels.hpp"

namespace korosum {

namespace {

void check_sum_args(u64 b, u64 m, u64 N) {
    if (b < 2) throw OutOfRange("base b must be at least 2");
    if (m == 0) throw OutOfRange("modulus must be positive");
    if (N == 0) throw OutOfRange("term count N must be positive");
}

std::complex<double> orbit(u64 start, u64 b, u64 m, u64 count, Exec exec) {
    return exec == Exec::serial ? kernels::orbit_sum_serial(start, b, m, count)
                                : kernels::orbit_sum_omp(start, b, m, count);
}

SumResult make_result(std::complex<double> v, i64 a, u64 b, u64 m, u64 N) {
    return SumResult{v, std::abs(v), N, m, a, b};
}

}  // namespace

u64 reduce_numerator(i64 a, u64 m) noexcept {
    if (a >= 0) return static_cast<u64>(a) % m;
    const u64 r = static_cast<u64>(-(a + 1)) % m;  // avoids negating INT64_MIN
    return m - 1 - r;
}

SumResult eval_sum(i64 a, u64 b, u64 m, u64 N, Exec exec) {
    check_sum_args(b, m, N);
    const u64 start = mul_mod(reduce_numerator(a, m), b % m, m);
    return make_result(orbit(start, b, m, N, exec), a, b, m, N);
}

SumResult eval_sum_reduced(i64 a, u64 b, u64 m, u64 N, Exec exec) {
    check_sum_args(b, m, N);
    if (std::gcd(b, m) != 1) throw NotCoprime(b, m);
    const u64 period = mult_order(b, m);
    const u64 start = mul_mod(reduce_numerator(a, m), b % m, m);
    const u64 q = N / period;
    const u64 r = N % period;
    std::complex<double> value{};
    if (q > 0) value = static_cast<double>(q) * orbit(start, b, m, period, exec);
    if (r > 0) value += orbit(start, b, m, r, exec);
    return make_result(value, a, b, m, N);
}

std::vector<std::complex<double>> eval_sum_prefixes(i64 a, u64 b, u64 m, std::span<const u64> Ns) {
    for (std::size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] < Ns[i - 1]) throw OutOfRange("prefix lengths must be ascending");
    if (!Ns.empty()) check_sum_args(b, m, Ns.front());
    const u64 start = mul_mod(reduce_numerator(a, m), b % m, m);
    return kernels::orbit_prefix_sums(start, b, m, Ns);
}

// -------------------------------------------------------------- m' choice

namespace {

struct TargetExponent {
    cert::Real upper;   // x rounded up
    double nearest;     // x
    double log_weight;  // (1 + gamma - nu) log N / log m
};

TargetExponent target_exponent(u64 m, u64 N, const mpq_class& alpha, const mpq_class& gamma,
                               const mpq_class& nu) {
    using namespace cert;
    const mpq_class slope = 1 + gamma - nu;
    const Real log_n_up = log(from_u64(N), kUp);
    const Real log_m_dn = log(from_u64(m), kDown);
    const Real weight_up = mul(from_rational(slope, kUp), div(log_n_up, log_m_dn, kUp), kUp);
    const Real num_up = add(from_rational(alpha, kUp), weight_up, kUp);
    const Real den_dn = add(Real(1.0), from_rational(alpha, kDown), kDown);

    const Real weight = mul(from_rational(slope, MPFR_RNDN),
                            div(log(from_u64(N), MPFR_RNDN), log(from_u64(m), MPFR_RNDN), MPFR_RNDN),
                            MPFR_RNDN);
    const Real x = div(add(from_rational(alpha, MPFR_RNDN), weight, MPFR_RNDN),
                       add(Real(1.0), from_rational(alpha, MPFR_RNDN), MPFR_RNDN), MPFR_RNDN);
    return {div(num_up, den_dn, kUp), to_double(x, MPFR_RNDN), to_double(weight, MPFR_RNDN)};
}

}  // namespace

double m_prime_target(u64 m, u64 N, const mpq_class& alpha, const mpq_class& gamma,
                      const mpq_class& nu) {
    const TargetExponent t = target_exponent(m, N, alpha, gamma, nu);
    return std::pow(static_cast<double>(m), t.nearest);
}

u64 choose_m_prime(u64 m, u64 N, const PrimeSet& primes, const mpq_class& alpha,
                   const mpq_class& gamma, const mpq_class& nu) {
    if (m <= 1) throw DegenerateRange("m' construction needs m > 1");
    if (N == 0) throw OutOfRange("term count N must be positive");
    if (alpha == 0) throw DegenerateRange("m' construction needs alpha != 0");
    if (1 + gamma < nu) throw DegenerateRange("m' construction needs 1 + gamma >= nu");
    const SmoothFactorization fact = factor_smooth(m, primes);

    const TargetExponent t = target_exponent(m, N, alpha, gamma, nu);
    if (!(t.log_weight < 1.0)) throw DegenerateRange("N^{1+gamma-nu} >= m");
    if (!(t.nearest > 0.0 && t.nearest < 1.0)) throw DegenerateRange("exponent x outside (0, 1)");

    // floor of an upper bound for x l_i, capped at l_i - 1: m' >= m^x always
    // holds and m' still divides Q-saturated m.
    u64 result = primes.product();
    const bool four_divides = m % 4 == 0;
    for (const auto& f : fact.factors) {
        cert::Real xl = cert::mul(t.upper, cert::from_u64(f.exponent), cert::kUp);
        mpfr_floor(xl.get(), xl.get());
        auto e = static_cast<unsigned>(mpfr_get_ui(xl.get(), MPFR_RNDZ));
        if (f.exponent == 0) e = 0;
        else e = std::min(e, f.exponent - 1);
        if (f.prime == 2 && four_divides) e = std::max(e, 1u);
        result *= ipow(f.prime, e);
    }
    return result;
}

bool is_admissible_m_prime(u64 m, u64 m_prime) {
    if (m_prime == 0 || m % m_prime != 0) return false;
    if (m_prime % radical(m) != 0) return false;
    return m % 4 != 0 || m_prime % 4 == 0;
}

u64 m_bar(u64 b, u64 m, u64 m_prime) {
    if (std::gcd(b, m) != 1) throw NotCoprime(b, m);
    if (m_prime == 0 || m % m_prime != 0) throw NotDivisor(m_prime, m);
    const u64 tau = mult_order(b, m_prime);
    const u64 r = mod_pow(b, tau, m);
    return std::gcd((r + m - 1) % m, m);
}

// --------------------------------------------------------- differencing

DifferencingReport verify_differencing(i64 a, u64 b, u64 m, u64 m_prime, u64 N, Exec exec) {
    check_sum_args(b, m, N);
    if (m_prime == 0) throw OutOfRange("m' must be positive");
    if (std::gcd(b, m) != 1) throw NotCoprime(b, m);
    if (std::gcd(b, m_prime) != 1) throw NotCoprime(b, m_prime);

    DifferencingReport rep;
    rep.m_prime = m_prime;
    rep.tau = mult_order(b, m_prime);

    std::vector<u64> residues(N);
    u64 r = reduce_numerator(a, m);
    for (u64 n = 0; n < N; ++n) {
        r = mul_mod(r, b % m, m);
        residues[n] = r;
    }
    const double s = std::abs(orbit(residues.front(), b, m, N, exec));
    rep.lhs_squared = s * s;

    const std::vector<double> mags = exec == Exec::serial
        ? kernels::lag_sum_magnitudes_serial(residues, m, rep.tau)
        : kernels::lag_sum_magnitudes_omp(residues, m, rep.tau);
    const double mp = static_cast<double>(m_prime);
    rep.rhs = mp * static_cast<double>(N) + 2.0 * mp * kernels::pairwise_sum(std::span<const double>(mags));
    rep.holds = rep.lhs_squared <= rep.rhs * (1.0 + kInequalitySlack);
    return rep;
}

ClaimReport check_claims(u64 b, u64 m, u64 m_prime, const mpz_class& capital, u64 i_max) {
    ClaimReport rep;
    rep.m_bar = m_bar(b, m, m_prime);
    rep.tau = mult_order(b, m_prime);
    rep.order_preserved = mult_order(b, rep.m_bar) == rep.tau;

    const u64 cofactor = m / rep.m_bar;
    const u64 step = mod_pow(b, rep.tau, m);
    u64 power = 1;
    rep.gcd_structure = true;
    for (u64 i = 1; i <= i_max; ++i) {
        power = mul_mod(power, step, m);  // b^{i tau} mod m
        const u64 g = std::gcd((power + m - 1) % m, m);
        if (g != rep.m_bar * std::gcd(i, cofactor)) {
            rep.gcd_structure = false;
            rep.first_gcd_failure = i;
            break;
        }
    }

    const mpz_class ratio(static_cast<unsigned long>(rep.m_bar / m_prime));
    rep.divides_capital_m = rep.m_bar % m_prime == 0 && mpz_divisible_p(capital.get_mpz_t(), ratio.get_mpz_t()) &&
                            mpz_class(static_cast<unsigned long>(rep.m_bar)) <=
                                capital * mpz_class(static_cast<unsigned long>(m_prime));
    return rep;
}

}  // namespace korosum
