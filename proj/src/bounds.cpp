#include "korosum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace korosum {

using cert::Real;
using cert::kDown;
using cert::kUp;

namespace {

mpq_class pow2(unsigned e) {
    mpz_class z = 1;
    z <<= e;
    return mpq_class(z);
}

Real ipow_up(u64 base, unsigned long e) {
    Real r;
    mpfr_ui_pow_ui(r.get(), base, e, kUp);
    return r;
}

// x^q for x >= 1, q rounded in direction `dir` first, result rounded by `rnd`.
Real rpow(u64 x, const mpq_class& q, mpfr_rnd_t dir, mpfr_rnd_t rnd) {
    return cert::pow(cert::from_u64(x), cert::from_rational(q, dir), rnd);
}

Real from_upper_double(double v) { return Real(v); }

mpq_class reciprocal(const mpq_class& q) { return mpq_class(q.get_den(), q.get_num()); }

}  // namespace

// ---------------------------------------------------------------- intervals

bool RationalInterval::strictly_contains(const RationalInterval& other) const {
    if (other.lo <= lo) return false;
    if (hi_infinite) return true;
    return !other.hi_infinite && other.hi < hi;
}

std::string RationalInterval::to_string() const {
    return "[" + lo.get_str() + ", " + (hi_infinite ? std::string("inf") : hi.get_str()) + "]";
}

std::vector<ExponentState> exponent_table(unsigned k_max) {
    std::vector<ExponentState> out;
    out.reserve(k_max + 1);
    ExponentState s;
    s.alpha = mpq_class(1, 2);
    s.gamma = 0;
    s.nu = 1;
    for (unsigned k = 0;; ++k) {
        s.k = k;
        const mpq_class scale = pow2(k + 2);
        s.c_gamma = scale * (1 - s.gamma) - (k + 3);
        s.c_nu = scale * (s.nu - 1) - (static_cast<long>(k) - 1);
        out.push_back(s);
        if (k == k_max) break;

        const mpq_class& a = s.alpha;
        const mpq_class denom = 2 * (1 + a);
        ExponentState next;
        next.alpha = a / denom;
        next.gamma = (1 + s.gamma + a * s.nu) / denom;
        next.nu = (1 + s.nu) / 2 + (1 + s.gamma - s.nu) * a / denom;
        next.alpha.canonicalize();
        next.gamma.canonicalize();
        next.nu.canonicalize();
        s = std::move(next);
    }
    return out;
}

ExponentState exponents(unsigned k) { return exponent_table(k).back(); }

double LimitConstant::value() const { return cert::rational_to_double(estimate, MPFR_RNDN); }
double LimitConstant::tail_bound() const { return cert::rational_to_double(tail, kUp); }

LimitConstant epsilon_prime_and_c(unsigned k_max, double tol) {
    LimitConstant lc;
    lc.epsilon_prime.push_back(1);
    auto tail_at = [](unsigned K) -> mpq_class { return mpq_class(2 * (K + 7)) / pow2(K); };
    for (unsigned k = 1;; ++k) {
        const unsigned K = k - 1;
        if (K >= k_max && cert::rational_to_double(tail_at(K), kUp) <= tol) break;
        const mpq_class d = pow2(k + 1) - 1;
        mpq_class next = (1 - 2 / d) * lc.epsilon_prime.back() + mpq_class(1 - 2 * static_cast<long>(k)) / d;
        next.canonicalize();
        lc.epsilon_prime.push_back(std::move(next));
    }
    lc.estimate = lc.epsilon_prime.back();
    lc.tail = tail_at(lc.levels());
    return lc;
}

const LimitConstant& limit_constant() {
    static const LimitConstant c = epsilon_prime_and_c(120);
    return c;
}

RationalInterval nontrivial_interval(unsigned k) {
    const ExponentState e = exponents(k);
    RationalInterval I;
    I.lo = e.alpha / (1 - e.gamma);
    I.lo.canonicalize();
    if (e.nu == 1) {
        I.hi_infinite = true;
    } else {
        I.hi = e.alpha / (e.nu - 1);
        I.hi.canonicalize();
    }
    return I;
}

std::optional<OptimalRange> optimal_range(unsigned k) {
    if (k == 0) return std::nullopt;
    const LimitConstant& c = limit_constant();
    const mpq_class kk(static_cast<long>(k));
    OptimalRange r;
    r.lo_range = {reciprocal(kk + c.hi() + 2), reciprocal(kk + c.lo() + 2), false};
    r.hi_range = {reciprocal(kk + c.hi() + 1), reciprocal(kk + c.lo() + 1), false};
    return r;
}

mpq_class delta_of_subinterval(unsigned k, const RationalInterval& sub) {
    if (sub.lo <= 0) throw OutOfRange("sub-interval must start above 0");
    if (!sub.hi_infinite && sub.hi < sub.lo) throw OutOfRange("sub-interval has lo > hi");
    const RationalInterval I = nontrivial_interval(k);
    if (!I.strictly_contains(sub))
        throw NotInterior(sub.to_string() + " is not interior to I_" + std::to_string(k) + " = " +
                          I.to_string());
    const ExponentState e = exponents(k);
    const mpq_class d1 = (1 - e.gamma) * sub.lo - e.alpha;
    // nu = 1 makes the second term flat in N, so an unbounded I needs no hi.
    const mpq_class d2 = sub.hi_infinite ? e.alpha : e.alpha - (e.nu - 1) * sub.hi;
    mpq_class d = std::min(d1, d2);
    d.canonicalize();
    return d;
}

mpq_class gamma_side_exponent(unsigned k, const LimitConstant& c) {
    const ExponentState e = exponents(k);
    mpq_class v = e.alpha * (mpq_class(static_cast<long>(k)) + c.hi() + 2) + e.gamma - 1;
    v.canonicalize();
    return v;
}

mpq_class nu_side_exponent(unsigned k, const LimitConstant& c) {
    const ExponentState e = exponents(k);
    mpq_class v = -e.alpha * (mpq_class(static_cast<long>(k)) + c.lo() + 1) + e.nu - 1;
    v.canonicalize();
    return v;
}

double gamma_side_decimal(unsigned k) {
    const ExponentState e = exponents(k);
    const mpq_class v = e.alpha * (mpq_class(static_cast<long>(k)) + limit_constant().estimate + 2) + e.gamma - 1;
    return cert::rational_to_double(v, MPFR_RNDN);
}

double nu_side_decimal(unsigned k) {
    const ExponentState e = exponents(k);
    const mpq_class v = -e.alpha * (mpq_class(static_cast<long>(k)) + limit_constant().estimate + 1) + e.nu - 1;
    return cert::rational_to_double(v, MPFR_RNDN);
}

// ---------------------------------------------------------------- constants

namespace {

// prod p^{1/2} / (p^{1/2} - 1), rounded up.
Real c_half_up(const PrimeSet& primes) {
    Real acc(1.0);
    for (u64 p : primes.primes()) {
        const Real num = cert::sqrt(cert::from_u64(p), kUp);
        const Real den = cert::sub(cert::sqrt(cert::from_u64(p), kDown), Real(1.0), kDown);
        acc = cert::mul(acc, cert::div(num, den, kUp), kUp);
    }
    return acc;
}

// prod 1 / (1 - 1/p), rounded up.
Real euler_factor_up(const PrimeSet& primes) {
    Real acc(1.0);
    for (u64 p : primes.primes()) {
        const Real inv = cert::div(Real(1.0), cert::from_u64(p), kUp);
        const Real den = cert::sub(Real(1.0), inv, kDown);
        acc = cert::div(acc, den, kUp);
    }
    return acc;
}

Real pow2_real(const mpq_class& e, mpfr_rnd_t rnd) {
    return cert::pow(Real(2.0), cert::from_rational(e, rnd), rnd);
}

}  // namespace

KConstants k_constants(const PrimeSet& primes, u64 b) {
    for (u64 p : primes.primes())
        if (b % p == 0) throw NotCoprime(b, p);
    const auto s = static_cast<long>(primes.size());
    const u64 Q = primes.product();
    const Real c_half = c_half_up(primes);

    KConstants K;
    Real k1 = cert::mul(Real(6.0), pow2_real(mpq_class(2 * s + 7, 2), kUp), kUp);
    k1 = cert::mul(k1, rpow(Q, mpq_class(3, 2), kUp, kUp), kUp);
    k1 = cert::mul(k1, ipow_up(b, 4 * Q), kUp);
    k1 = cert::mul(k1, c_half, kUp);
    K.K1 = cert::mul(k1, euler_factor_up(primes), kUp);

    K.K2 = ipow_up(2, static_cast<unsigned long>(s));

    Real k3 = cert::mul(pow2_real(mpq_class(3, 2), kUp), cert::sqrt(cert::from_u64(Q), kUp), kUp);
    k3 = cert::mul(k3, ipow_up(b, 2 * Q), kUp);
    K.K3 = cert::mul(k3, c_half, kUp);
    return K;
}

BoundSystem::BoundSystem(PrimeSet primes, u64 b, unsigned k_max)
    : primes_(std::move(primes)), b_(b), k_max_(k_max) {
    if (b < 2) throw OutOfRange("base b must be at least 2");
    M_ = korosum::capital_m(primes_, b_);
    exps_ = exponent_table(k_max_);
    K_ = korosum::k_constants(primes_, b_);

    const auto s = static_cast<long>(primes_.size());
    const u64 Q = primes_.product();
    const Real M = cert::from_integer(M_, kUp);
    const Real Qr = cert::from_u64(Q);
    const Real c_half = c_half_up(primes_);
    const Real euler = euler_factor_up(primes_);
    const Real b_cap = cert::mul(
        cert::mul(cert::mul(pow2_real(mpq_class(3, 2), kUp), M, kUp), cert::sqrt(Qr, kUp), kUp), c_half, kUp);
    Real a_cap_base = cert::mul(Real(6.0), rpow(Q, mpq_class(3, 2), kUp, kUp), kUp);
    a_cap_base = cert::mul(a_cap_base, cert::mul(M, M, kUp), kUp);
    a_cap_base = cert::mul(a_cap_base, cert::mul(c_half, euler, kUp), kUp);

    consts_.reserve(k_max_ + 1);
    ConstantState st;
    st.k = 0;
    st.A = Real(1.0);
    st.B = M;
    for (unsigned k = 0;; ++k) {
        st.k = k;
        st.b_cap = b_cap;
        st.a_cap = cert::mul(a_cap_base, pow2_real(mpq_class(2 * s * (k + 1) + 7, 2), kUp), kUp);
        consts_.push_back(st);
        if (k == k_max_) break;

        const mpq_class& a = exps_[k].alpha;
        const Real c_a = from_upper_double(c_p_alpha(primes_, a));
        const Real c_1pa = from_upper_double(c_p_alpha(primes_, 1 + a));
        const Real c_1ma = from_upper_double(c_p_alpha(primes_, 1 - a));

        // A_k^2 = 2^{s+2} Q (A + B) C_a + 2Q + 2 A M C_{1+a}
        Real t1 = cert::mul(ipow_up(2, static_cast<unsigned long>(s + 2)), Qr, kUp);
        t1 = cert::mul(t1, cert::add(st.A, st.B, kUp), kUp);
        t1 = cert::mul(t1, c_a, kUp);
        const Real t2 = cert::mul(Real(2.0), Qr, kUp);
        Real t3 = cert::mul(cert::mul(Real(2.0), st.A, kUp), M, kUp);
        t3 = cert::mul(t3, c_1pa, kUp);
        ConstantState next;
        next.A = cert::sqrt(cert::add(cert::add(t1, t2, kUp), t3, kUp), kUp);

        // B_k^2 = 2^{1+a} B M Q^a C_{1-a}
        Real u = cert::mul(pow2_real(1 + a, kUp), st.B, kUp);
        u = cert::mul(u, M, kUp);
        u = cert::mul(u, rpow(Q, a, kUp, kUp), kUp);
        u = cert::mul(u, c_1ma, kUp);
        next.B = cert::sqrt(u, kUp);
        st = std::move(next);
    }
}

void BoundSystem::check_level(unsigned k) const {
    if (k > k_max_)
        throw OutOfRange("level " + std::to_string(k) + " exceeds table size " + std::to_string(k_max_));
}

const ExponentState& BoundSystem::exponents(unsigned k) const {
    check_level(k);
    return exps_[k];
}

const ConstantState& BoundSystem::constants(unsigned k) const {
    check_level(k);
    return consts_[k];
}

// -------------------------------------------------------------- evaluators

namespace {

Real log_factor_up(u64 m, unsigned k) {
    const Real base = cert::add(Real(1.0), cert::log(cert::from_u64(m), kUp), kUp);
    mpz_class den = 1;
    den <<= k;
    return cert::pow(base, cert::from_rational(mpq_class(mpz_class(1), den), kUp), kUp);
}

BoundReport finish(u64 m, u64 N, unsigned k, const Real& main, const Real& secondary, const Real& logf,
                   std::string source) {
    BoundReport r;
    r.m = m;
    r.N = N;
    r.k = k;
    r.term_main = cert::to_double(main, kUp);
    r.term_secondary = cert::to_double(secondary, kUp);
    r.log_factor = cert::to_double(logf, kUp);
    r.bound_value = cert::to_double(cert::mul(cert::add(main, secondary, kUp), logf, kUp), kUp);
    r.nontrivial = r.bound_value < static_cast<double>(N);
    r.source = std::move(source);
    return r;
}

}  // namespace

BoundReport BoundSystem::bound_eval(u64 m, u64 N, unsigned k, BoundForm form) const {
    check_level(k);
    if (N == 0) throw OutOfRange("term count N must be positive");
    if (m == 0) throw OutOfRange("modulus must be positive");
    factor_smooth(m, primes_);

    const ExponentState& e = exps_[k];
    Real coef_main, coef_secondary;
    mpq_class g = e.gamma;
    mpq_class v = e.nu;
    std::string source;
    if (form == BoundForm::recursive) {
        coef_main = consts_[k].A;
        coef_secondary = consts_[k].B;
        source = k == 0 ? "long-sum (k=0)" : "recursive";
    } else {
        coef_main = cert::mul(K_.K1, ipow_up(2, static_cast<unsigned long>(primes_.size()) * k), kUp);
        coef_secondary = K_.K3;
        const mpq_class scale = pow2(k + 2);
        g = 1 - (mpq_class(static_cast<long>(k) + 3) + e.c_gamma) / scale;
        v = 1 + (mpq_class(static_cast<long>(k) - 1) + e.c_nu) / scale;
        source = "main";
    }
    const Real main = cert::mul(cert::mul(coef_main, rpow(m, e.alpha, kUp, kUp), kUp),
                                rpow(N, g, kUp, kUp), kUp);
    const Real secondary = cert::mul(cert::mul(coef_secondary, rpow(m, -e.alpha, kUp, kUp), kUp),
                                     rpow(N, v, kUp, kUp), kUp);
    BoundReport r = finish(m, N, k, main, secondary, log_factor_up(m, k), std::move(source));
    if (m > 1) {
        const double x = std::log(static_cast<double>(N)) / std::log(static_cast<double>(m));
        const RationalInterval I = nontrivial_interval(k);
        r.in_nontrivial_range = x >= I.lo.get_d() && (I.hi_infinite || x <= I.hi.get_d());
    }
    return r;
}

BoundReport BoundSystem::bound_short(u64 m, u64 N, u64 d) const {
    if (m <= 1) throw RangeViolation("short-sum bound needs m > 1");
    if (N == 0) throw OutOfRange("term count N must be positive");
    if (d == 0 || m % d != 0) throw NotDivisor(d, m);
    const ModulusStructure ms = mult_order_structured(b_, m, primes_);
    if (N > ms.order)
        throw RangeViolation("short-sum bound needs N <= ord(b, m) = " + std::to_string(ms.order));
    if (d != 1 && d >= m / ms.m1)
        throw RangeViolation("short-sum bound needs d = 1 or d < m/m1 = " + std::to_string(m / ms.m1));
    const Real q = cert::div(cert::from_u64(m), cert::from_u64(d), kUp);
    const Real main = cert::sqrt(q, kUp);
    const Real logf = cert::add(Real(1.0), cert::log(q, kUp), kUp);
    return finish(m, N, 0, main, Real(0.0), logf, "short-sum");
}

BoundReport BoundSystem::bound_long(u64 m, u64 N) const {
    if (m == 0 || N == 0) throw OutOfRange("m and N must be positive");
    factor_smooth(m, primes_);
    const Real root_up = cert::sqrt(cert::from_u64(m), kUp);
    const Real root_dn = cert::sqrt(cert::from_u64(m), kDown);
    const Real secondary = cert::div(cert::mul(cert::from_integer(M_, kUp), cert::from_u64(N), kUp), root_dn, kUp);
    return finish(m, N, 0, root_up, secondary, log_factor_up(m, 0), "long-sum");
}

unsigned heuristic_level(u64 m, u64 N) {
    if (m <= 1 || N <= 1) return 0;
    const double x = std::log(static_cast<double>(N)) / std::log(static_cast<double>(m));
    const double c = limit_constant().value();
    if (x > 1.0 / (1.0 + c + 1.0)) return 0;
    unsigned k = 1;
    while (x < 1.0 / (k + c + 2.0) && k < 1000) ++k;
    return k;
}

BoundSystem::BestK BoundSystem::best_k(u64 m, u64 N, unsigned k_max) const {
    check_level(k_max);
    BestK best;
    best.heuristic_k = heuristic_level(m, N);
    for (unsigned k = 0; k <= k_max; ++k) {
        BoundReport r = bound_eval(m, N, k);
        if (k == 0 || r.bound_value < best.report.bound_value) {
            best.k = k;
            best.report = std::move(r);
        }
    }
    return best;
}

double bound_korobov_prime(u64 p, unsigned alpha_exp, u64 N) {
    if (p % 2 == 0 || !is_prime(p)) throw RangeViolation("comparator needs an odd prime p");
    if (N < 2) throw RangeViolation("comparator needs N >= 2");
    if (alpha_exp == 0) throw RangeViolation("comparator needs alpha >= 1");
    constexpr double g = 1.0 / 2e6;
    const double log_n = std::log(static_cast<double>(N));
    const double log_m = alpha_exp * std::log(static_cast<double>(p));
    return 3.0 * static_cast<double>(N) * std::exp(-g * log_n * log_n * log_n / (log_m * log_m));
}

// ---------------------------------------------------------------- corollary

CorollaryConstants corollary_constants(const mpq_class& epsilon, const PrimeSet& primes, u64 b) {
    if (epsilon <= 0 || epsilon >= 1) throw EpsilonOutOfRange("epsilon must lie in (0, 1)");
    constexpr unsigned kSearch = 256;
    const std::vector<ExponentState> table = exponent_table(kSearch + 1);
    auto interval = [&](unsigned k) {
        const ExponentState& e = table[k];
        RationalInterval I{e.alpha / (1 - e.gamma), 0, e.nu == 1};
        if (!I.hi_infinite) I.hi = e.alpha / (e.nu - 1);
        I.lo.canonicalize();
        I.hi.canonicalize();
        return I;
    };

    CorollaryConstants out;
    unsigned k = 0;
    while (k <= kSearch && !interval(k).contains_interior(epsilon)) ++k;
    if (k > kSearch) throw EpsilonOutOfRange("no level up to 256 has epsilon interior");
    out.k = k;

    if (k == 0) {
        out.partition.push_back({epsilon, 1, false});
        out.delta = delta_of_subinterval(0, out.partition.front());
    } else {
        // 1 = t_0 > t_1 > ... > t_k = eps with J_i = [t_i, t_{i-1}] inside I_i.
        mpq_class top = 1;
        for (unsigned i = 1; i <= k; ++i) {
            mpq_class bottom = epsilon;
            if (i < k) {
                const RationalInterval here = interval(i);
                const RationalInterval below = interval(i + 1);
                const mpq_class lo = std::max(here.lo, epsilon);
                const mpq_class hi = below.hi_infinite ? top : std::min(top, below.hi);
                bottom = (lo + hi) / 2;
                bottom.canonicalize();
            }
            out.partition.push_back({bottom, top, false});
            top = bottom;
        }
        out.delta = delta_of_subinterval(1, out.partition.front());
        for (unsigned i = 2; i <= k; ++i)
            out.delta = std::min(out.delta, delta_of_subinterval(i, out.partition[i - 1]));
    }

    const KConstants K = k_constants(primes, b);
    Real C = cert::mul(Real(2.0), K.K1, kUp);
    C = cert::mul(C, ipow_up(2, static_cast<unsigned long>(primes.size()) * k), kUp);
    out.C = cert::mul(C, K.K3, kUp);
    return out;
}

double secondary_threshold_log(double log_m) {
    if (!(log_m > 1.0)) return std::numeric_limits<double>::infinity();
    const double ll = std::log(log_m);
    if (!(ll > 0.0)) return std::numeric_limits<double>::infinity();
    const double den = std::log2(log_m) - 3.0 * std::log2(ll);
    if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
    return log_m / den;
}

double secondary_decay(double log_m, double c_hat) {
    if (!(log_m > 1.0)) return 1.0;
    return std::exp(-c_hat * std::pow(std::log(log_m), 1.5));
}

}  // namespace korosum
