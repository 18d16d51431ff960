#pragma once

// Directed-rounding reals backed by MPFR. Every bound in the library is
// assembled from these so a computed upper bound never under-reports.

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace korosum::cert {

inline constexpr mpfr_prec_t kPrecision = 192;

inline constexpr mpfr_rnd_t kUp = MPFR_RNDU;
inline constexpr mpfr_rnd_t kDown = MPFR_RNDD;

/// Owning handle around an mpfr_t at kPrecision bits.
class Real {
public:
    Real();
    explicit Real(double v);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }

    bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }

private:
    mpfr_t value_;
};

Real from_rational(const mpq_class& q, mpfr_rnd_t rnd);
Real from_integer(const mpz_class& z, mpfr_rnd_t rnd);
Real from_u64(unsigned long v);

Real add(const Real& a, const Real& b, mpfr_rnd_t rnd);
Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd);
Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd);
Real div(const Real& a, const Real& b, mpfr_rnd_t rnd);
Real sqrt(const Real& a, mpfr_rnd_t rnd);
Real pow(const Real& base, const Real& exponent, mpfr_rnd_t rnd);
Real log(const Real& a, mpfr_rnd_t rnd);
Real exp(const Real& a, mpfr_rnd_t rnd);
Real neg(const Real& a);

double to_double(const Real& a, mpfr_rnd_t rnd);
/// Nearest double to q; exact rational comparison decides the rounding.
double rational_to_double(const mpq_class& q, mpfr_rnd_t rnd);

/// Large positive value as mantissa * 10^exponent with its natural log.
struct Scaled {
    double log_value = 0.0;
    double mantissa = 0.0;
    long exponent10 = 0;
    double value = 0.0;  ///< +inf when it does not fit a double

    std::string to_string() const;
};

Scaled scaled(const Real& a);

}  // namespace korosum::cert
