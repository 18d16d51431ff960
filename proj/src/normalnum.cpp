#include "korosum/normalnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <gmpxx.h>

#include "korosum/kernels.hpp"

namespace korosum {

SequenceSpec SequenceSpec::list_of(std::vector<u64> v) {
    SequenceSpec s;
    s.kind = Kind::list;
    s.values = std::move(v);
    return s;
}

SequenceSpec SequenceSpec::geometric_of(u64 first, u64 ratio) {
    SequenceSpec s;
    s.kind = Kind::geometric;
    s.first = first;
    s.step = ratio;
    return s;
}

SequenceSpec SequenceSpec::linear_of(u64 first, u64 step) {
    SequenceSpec s;
    s.kind = Kind::linear;
    s.first = first;
    s.step = step;
    return s;
}

u64 SequenceSpec::at(std::size_t k, const std::string& name) const {
    if (k == 0) throw OutOfRange("sequence indices start at 1");
    switch (kind) {
        case Kind::list:
            if (k > values.size()) throw ScheduleViolation(name + "_k is defined", k);
            return values[k - 1];
        case Kind::geometric: {
            u64 v = first;
            for (std::size_t i = 1; i < k; ++i) {
                if (step != 0 && v > std::numeric_limits<u64>::max() / step)
                    throw ScheduleViolation(name + "_k fits in 64 bits", k);
                v *= step;
            }
            return v;
        }
        case Kind::linear: {
            const u64 n = k - 1;
            if (step != 0 && n > (std::numeric_limits<u64>::max() - first) / step)
                throw ScheduleViolation(name + "_k fits in 64 bits", k);
            return first + step * n;
        }
    }
    return 0;
}

namespace {

void check_base(const Schedule& s) {
    if (s.b < 2) throw ScheduleViolation("b >= 2", 0);
    for (u64 p : s.primes.primes())
        if (s.b % p == 0) throw ScheduleViolation("gcd(b, p) = 1 for p in P", 0);
}

// Structural checks on the pair (c_k, m_k) given its predecessor.
void check_step(const Schedule& s, std::size_t k, u64 c_prev, u64 m_prev, u64 c, u64 m) {
    if (c < 2) throw ScheduleViolation("c_k >= 2", k);
    if (!is_smooth(c, s.primes)) throw ScheduleViolation("c_k is P-smooth", k);
    if (k > 1 && c <= c_prev) throw ScheduleViolation("c_k strictly increasing", k);
    if (k > 1 && c % c_prev != 0) throw ScheduleViolation("c_{k-1} divides c_k", k);
    if (k == 1 && m < 1) throw ScheduleViolation("m_1 >= 1", k);
    if (k > 1 && m <= m_prev) throw ScheduleViolation("m_k strictly increasing", k);
}

}  // namespace

ScheduleValidation validate_schedule(const Schedule& s, std::size_t K) {
    if (K < 2) throw OutOfRange("validation horizon must be at least 2");
    check_base(s);
    ScheduleValidation v;
    v.horizon = K;
    u64 c_prev = 1, m_prev = 0;
    for (std::size_t k = 1; k <= K; ++k) {
        const u64 c = s.c_at(k);
        const u64 m = s.m_at(k);
        check_step(s, k, c_prev, m_prev, c, m);
        const double log_c = std::log(static_cast<double>(c));
        const double ll = std::log(log_c);
        const double mu = static_cast<double>(m - m_prev);
        v.log_ratio.push_back(ll > 0 ? (1.0 + s.epsilon) * log_c / ll - std::log(mu)
                                     : std::numeric_limits<double>::quiet_NaN());
        c_prev = c;
        m_prev = m;
    }
    for (std::size_t i = 1; i < v.log_ratio.size(); ++i)
        if (v.log_ratio[i] < v.log_ratio[i - 1]) ++v.decreasing_steps;
    const double mid = v.log_ratio[K / 2];
    v.trend_decreasing = v.log_ratio.back() < mid;
    return v;
}

// ---------------------------------------------------------------- ancillary

AncillaryStream::AncillaryStream(const Schedule& s) : s_(s) {
    check_base(s_);
    next_start_ = s_.m_at(1);
    check_step(s_, 1, 1, 0, s_.c_at(1), next_start_);
}

void AncillaryStream::enter_next_block() {
    const std::size_t k = k_ + 1;
    const u64 c = s_.c_at(k);
    const u64 m_k = next_start_;
    const u64 m_prev = k == 1 ? 0 : s_.m_at(k - 1);
    check_step(s_, k, c_, m_prev, c, m_k);
    // a_k = b^{mu_k} a_{k-1} (c_k / c_{k-1}) + 1 mod c_k
    const u64 lifted = mul_mod(a_, c / c_, c);
    a_ = (mul_mod(mod_pow(s_.b, m_k - m_prev, c), lifted, c) + 1) % c;
    c_ = c;
    r_ = a_;
    k_ = k;
    const u64 m_next = s_.m_at(k + 1);
    if (m_next <= m_k) throw ScheduleViolation("m_k strictly increasing", k + 1);
    next_start_ = m_next;
}

AncillaryPoint AncillaryStream::next() {
    if (n_ == next_start_) enter_next_block();
    AncillaryPoint p;
    if (k_ == 0) {
        p = {0, 1};
    } else {
        p = {r_, c_};
        r_ = mul_mod(r_, s_.b, c_);
    }
    ++n_;
    return p;
}

std::vector<AncillaryPoint> ancillary_sequence(const Schedule& s, u64 N) {
    AncillaryStream stream(s);
    std::vector<AncillaryPoint> out;
    out.reserve(N + 1);
    for (u64 n = 0; n <= N; ++n) out.push_back(stream.next());
    return out;
}

// -------------------------------------------------------------- discrepancy

double star_discrepancy(std::vector<double> points) {
    if (points.empty()) throw OutOfUnitInterval("point set is empty");
    for (double x : points)
        if (!(x >= 0.0 && x < 1.0)) throw OutOfUnitInterval("point " + std::to_string(x) + " not in [0, 1)");
    std::sort(points.begin(), points.end());
    const double n = static_cast<double>(points.size());
    double d = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double above = static_cast<double>(i + 1) / n - points[i];
        const double below = points[i] - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    return d;
}

double erdos_turan_estimate(u64 a, u64 c, u64 b, u64 J, u64 M) {
    if (M == 0 || J == 0) throw OutOfRange("need M >= 1 and J >= 1");
    if (c == 0) throw OutOfRange("modulus must be positive");
    std::vector<double> terms(M);
    for (u64 h = 1; h <= M; ++h) {
        const u64 start = mul_mod(h % c, a % c, c);
        const double s = std::abs(kernels::orbit_sum_omp(start, b, c, J));
        terms[h - 1] = s / static_cast<double>(J) / static_cast<double>(h);
    }
    return 3.0 * (1.0 / static_cast<double>(M) + kernels::pairwise_sum(std::span<const double>(terms)));
}

DiscrepancyTrace discrepancy_trace(const Schedule& s, u64 n_max) {
    if (n_max < 2) throw OutOfRange("trace needs N_max >= 2");
    std::vector<double> xs;
    xs.reserve(n_max);
    AncillaryStream stream(s);
    for (u64 n = 0; n < n_max; ++n) xs.push_back(stream.next().value());

    std::vector<u64> checkpoints;
    for (u64 N = 2; N <= n_max; N *= 2) {
        checkpoints.push_back(N);
        if (N > n_max / 2) break;
    }
    DiscrepancyTrace trace;
    trace.points.resize(checkpoints.size());
    const auto count = static_cast<long>(checkpoints.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        const u64 N = checkpoints[i];
        trace.points[i] = {N, star_discrepancy(std::vector<double>(xs.begin(), xs.begin() + N))};
    }
    for (std::size_t i = 1; i < trace.points.size(); ++i)
        if (trace.points[i].star < trace.points[i - 1].star) ++trace.decreasing_steps;
    trace.final_below_first = trace.points.back().star < trace.points.front().star;
    return trace;
}

AlphaDigits alpha_digits(const Schedule& s, std::size_t n_digits) {
    if (n_digits == 0) throw OutOfRange("need at least one digit");
    check_base(s);
    mpq_class sum = 0;
    AlphaDigits out;
    u64 c_prev = 1, m_prev = 0;
    for (std::size_t k = 1;; ++k) {
        const u64 c = s.c_at(k);
        const u64 m = s.m_at(k);
        check_step(s, k, c_prev, m_prev, c, m);
        // tail from here on is below b^{-m_k}
        if (m >= n_digits + 4) break;
        mpz_class den = c;
        mpz_class bp;
        mpz_ui_pow_ui(bp.get_mpz_t(), s.b, m);
        den *= bp;
        sum += mpq_class(mpz_class(1), den);
        ++out.terms;
        c_prev = c;
        m_prev = m;
    }
    sum.canonicalize();

    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), s.b, n_digits);
    mpz_class q = sum.get_num() * scale / sum.get_den();  // floor(b^n alpha_K)
    out.digits.assign(n_digits, 0);
    for (std::size_t i = n_digits; i-- > 0;) {
        out.digits[i] = static_cast<unsigned>(mpz_fdiv_q_ui(q.get_mpz_t(), q.get_mpz_t(), s.b));
    }
    return out;
}

}  // namespace korosum
