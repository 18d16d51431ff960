#include "korosum/certified.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace korosum::cert {

Real::Real() { mpfr_init2(value_, kPrecision); mpfr_set_zero(value_, 1); }

Real::Real(double v) {
    mpfr_init2(value_, kPrecision);
    mpfr_set_d(value_, v, MPFR_RNDN);  // exact: kPrecision > 53
}

Real::Real(const Real& other) {
    mpfr_init2(value_, kPrecision);
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, kPrecision);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) mpfr_set(value_, other.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() {
    mpfr_clear(value_);
}

Real from_rational(const mpq_class& q, mpfr_rnd_t rnd) {
    Real r;
    mpfr_set_q(r.get(), q.get_mpq_t(), rnd);
    return r;
}

Real from_integer(const mpz_class& z, mpfr_rnd_t rnd) {
    Real r;
    mpfr_set_z(r.get(), z.get_mpz_t(), rnd);
    return r;
}

Real from_u64(unsigned long v) {
    Real r;
    mpfr_set_ui(r.get(), v, MPFR_RNDN);
    return r;
}

Real add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_add(r.get(), a.get(), b.get(), rnd);
    return r;
}

Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_sub(r.get(), a.get(), b.get(), rnd);
    return r;
}

Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_mul(r.get(), a.get(), b.get(), rnd);
    return r;
}

Real div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_div(r.get(), a.get(), b.get(), rnd);
    return r;
}

Real sqrt(const Real& a, mpfr_rnd_t rnd) {
    Real r;
    mpfr_sqrt(r.get(), a.get(), rnd);
    return r;
}

Real pow(const Real& base, const Real& exponent, mpfr_rnd_t rnd) {
    Real r;
    mpfr_pow(r.get(), base.get(), exponent.get(), rnd);
    return r;
}

Real log(const Real& a, mpfr_rnd_t rnd) {
    Real r;
    mpfr_log(r.get(), a.get(), rnd);
    return r;
}

Real exp(const Real& a, mpfr_rnd_t rnd) {
    Real r;
    mpfr_exp(r.get(), a.get(), rnd);
    return r;
}

Real neg(const Real& a) {
    Real r;
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

double to_double(const Real& a, mpfr_rnd_t rnd) { return mpfr_get_d(a.get(), rnd); }

double rational_to_double(const mpq_class& q, mpfr_rnd_t rnd) {
    double d = q.get_d();  // truncates toward zero
    if (!std::isfinite(d)) return d;
    const mpq_class exact(d);
    if (rnd == MPFR_RNDU && exact < q) d = std::nextafter(d, std::numeric_limits<double>::infinity());
    if (rnd == MPFR_RNDD && exact > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    if (rnd == MPFR_RNDN) {
        const double up = std::nextafter(d, std::numeric_limits<double>::infinity());
        const double dn = std::nextafter(d, -std::numeric_limits<double>::infinity());
        mpq_class best = abs(q - exact);
        if (abs(q - mpq_class(up)) < best) { best = abs(q - mpq_class(up)); d = up; }
        if (abs(q - mpq_class(dn)) < best) d = dn;
    }
    return d;
}

Scaled scaled(const Real& a) {
    Scaled s;
    s.value = mpfr_get_d(a.get(), MPFR_RNDU);
    if (mpfr_sgn(a.get()) <= 0) {
        s.log_value = -std::numeric_limits<double>::infinity();
        return s;
    }
    s.log_value = to_double(log(a, kUp), kUp);
    Real ten(10.0);
    Real log10v = div(log(a, MPFR_RNDN), log(ten, MPFR_RNDN), MPFR_RNDN);
    const double l10 = to_double(log10v, MPFR_RNDN);
    s.exponent10 = static_cast<long>(std::floor(l10));
    s.mantissa = std::pow(10.0, l10 - static_cast<double>(s.exponent10));
    if (s.mantissa >= 10.0) {
        s.mantissa /= 10.0;
        ++s.exponent10;
    }
    return s;
}

std::string Scaled::to_string() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12ge%+ld", mantissa, exponent10);
    return buf;
}

}  // namespace korosum::cert
