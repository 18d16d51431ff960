#include "korosum/digits.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "korosum/bounds.hpp"

namespace korosum {

namespace {

using u128 = unsigned __int128;

void check_fraction(u64 a, u64 m, u64 b) {
    if (b < 2) throw OutOfRange("base must be at least 2");
    if (m < 2 || a == 0 || a >= m) throw OutOfRange("need 1 <= a < m");
    if (std::gcd(b, m) != 1) throw OutOfRange("base and modulus must be coprime");
}

// Emits a_1, a_2, ... of a/m one digit at a time.
class DigitStream {
public:
    DigitStream(u64 a, u64 m, u64 b) : r_(a), m_(m), b_(b) {}
    unsigned next() noexcept {
        const u128 t = static_cast<u128>(r_) * b_;
        r_ = static_cast<u64>(t % m_);
        return static_cast<unsigned>(t / m_);
    }

private:
    u64 r_, m_, b_;
};

std::vector<std::size_t> failure_function(const std::vector<unsigned>& p) {
    std::vector<std::size_t> fail(p.size(), 0);
    for (std::size_t i = 1, j = 0; i < p.size(); ++i) {
        while (j > 0 && p[i] != p[j]) j = fail[j - 1];
        if (p[i] == p[j]) ++j;
        fail[i] = j;
    }
    return fail;
}

}  // namespace

DigitPattern DigitPattern::parse(const std::string& text, u64 base) {
    if (base < 2) throw OutOfRange("base must be at least 2");
    DigitPattern p;
    p.base = base;
    if (text.find(',') != std::string::npos || base > 10) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) throw OutOfRange("empty digit in pattern");
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw OutOfRange("bad digit '" + item + "'");
            p.digits.push_back(static_cast<unsigned>(v));
        }
    } else {
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw OutOfRange(std::string("bad digit '") + ch + "'");
            p.digits.push_back(static_cast<unsigned>(ch - '0'));
        }
    }
    if (p.digits.empty()) throw OutOfRange("pattern is empty");
    for (unsigned d : p.digits)
        if (d >= base) throw OutOfRange("digit " + std::to_string(d) + " out of range for base");
    return p;
}

std::string DigitPattern::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (base > 10 && i > 0) out += ',';
        out += std::to_string(digits[i]);
    }
    return out;
}

unsigned digit_at(u64 a, u64 m, u64 b, u64 n) {
    check_fraction(a, m, b);
    if (n == 0) throw OutOfRange("digit positions start at 1");
    const u64 r = mul_mod(a, mod_pow(b, n - 1, m), m);
    return static_cast<unsigned>(static_cast<u128>(r) * b / m);
}

OccurrenceReport count_occurrences(u64 a, u64 m, const DigitPattern& pattern, u64 N) {
    check_fraction(a, m, pattern.base);
    if (N == 0) throw OutOfRange("N must be positive");
    if (pattern.digits.empty()) throw OutOfRange("pattern is empty");
    const auto& p = pattern.digits;
    const std::size_t k = p.size();
    const auto fail = failure_function(p);

    DigitStream stream(a, m, pattern.base);
    OccurrenceReport rep;
    const u64 total = N + k - 1;  // last digit any counted match can touch
    std::size_t j = 0;
    for (u64 n = 0; n < total; ++n) {
        const unsigned d = stream.next();
        while (j > 0 && d != p[j]) j = fail[j - 1];
        if (d == p[j]) ++j;
        if (j == k) {
            ++rep.count;
            j = fail[j - 1];
        }
    }
    rep.N = N;
    rep.pattern = pattern;
    rep.expected = static_cast<double>(N) / std::pow(static_cast<double>(pattern.base), static_cast<double>(k));
    rep.deviation = static_cast<double>(rep.count) - rep.expected;
    return rep;
}

std::vector<u64> pattern_histogram(u64 a, u64 m, u64 b, unsigned k, u64 N) {
    check_fraction(a, m, b);
    if (k == 0 || N == 0) throw OutOfRange("need k >= 1 and N >= 1");
    if (std::pow(static_cast<double>(b), k) > static_cast<double>(1u << 24))
        throw OutOfRange("b^k too large for a histogram");
    const u64 cells = ipow(b, k);
    std::vector<u64> hist(cells, 0);
    DigitStream stream(a, m, b);
    u64 window = 0;
    for (u64 n = 1; n < k; ++n) window = window * b + stream.next();
    for (u64 start = 1; start <= N; ++start) {
        window = (window * b + stream.next()) % cells;
        ++hist[window];
    }
    return hist;
}

DeviationReport deviation_report(u64 a, u64 m, const DigitPattern& pattern, u64 N,
                                 const PrimeSet& primes, double c_hat) {
    factor_smooth(m, primes);
    DeviationReport rep;
    rep.occurrences = count_occurrences(a, m, pattern, N);
    rep.c_hat = c_hat;
    rep.envelope = static_cast<double>(N) * secondary_decay(std::log(static_cast<double>(m)), c_hat);
    rep.ratio = std::abs(rep.occurrences.deviation) / rep.envelope;
    return rep;
}

}  // namespace korosum
