#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace korosum {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotSmooth : public Error {
public:
    NotSmooth(std::uint64_t n, std::uint64_t leftover)
        : Error("not smooth over the prime set: " + std::to_string(n) +
                " leaves cofactor " + std::to_string(leftover)),
          n_(n), leftover_(leftover) {}

    std::uint64_t n() const noexcept { return n_; }
    std::uint64_t leftover() const noexcept { return leftover_; }

private:
    std::uint64_t n_;
    std::uint64_t leftover_;
};

class NotCoprime : public Error {
public:
    NotCoprime(std::uint64_t b, std::uint64_t m)
        : Error("gcd(" + std::to_string(b) + ", " + std::to_string(m) + ") > 1") {}
};

class NonPositiveAlpha : public Error {
public:
    NonPositiveAlpha() : Error("exponent alpha must be positive") {}
};

class NotDivisor : public Error {
public:
    NotDivisor(std::uint64_t d, std::uint64_t n)
        : Error(std::to_string(d) + " does not divide " + std::to_string(n)) {}
};

class InvalidPrimeSet : public Error {
public:
    using Error::Error;
};

/// The m' construction has no admissible exponent x in (0, 1).
class DegenerateRange : public Error {
public:
    using Error::Error;
};

/// Preconditions of a bound formula are not met.
class RangeViolation : public Error {
public:
    using Error::Error;
};

class NotInterior : public Error {
public:
    using Error::Error;
};

class EpsilonOutOfRange : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class OutOfUnitInterval : public Error {
public:
    using Error::Error;
};

class ScheduleViolation : public Error {
public:
    ScheduleViolation(std::string hypothesis, std::size_t index)
        : Error("schedule violates '" + hypothesis + "' at k=" + std::to_string(index)),
          hypothesis_(std::move(hypothesis)), index_(index) {}

    const std::string& hypothesis() const noexcept { return hypothesis_; }
    std::size_t index() const noexcept { return index_; }

private:
    std::string hypothesis_;
    std::size_t index_;
};

class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// An empirical sum exceeded a proven bound. Always an implementation bug.
class BoundViolation : public Error {
public:
    using Error::Error;
};

}  // namespace korosum
