#pragma once

// Inner loops of the library. Every kernel has a serial reference and an
// OpenMP version. The parallel versions split work into fixed-size blocks
// and combine block results with a fixed pairwise tree, so their output
// depends only on the input, never on the thread count.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace korosum::kernels {

using u64 = std::uint64_t;
using cplx = std::complex<double>;

/// Terms per block in the parallel kernels.
inline constexpr u64 kBlock = u64{1} << 14;

/// e(r / m) = exp(2 pi i r / m) for a residue 0 <= r < m.
cplx unit_root(u64 r, u64 m) noexcept;

/// Neumaier-compensated accumulator for complex terms.
class CompensatedSum {
public:
    void add(cplx term) noexcept {
        add_part(re_, re_c_, term.real());
        add_part(im_, im_c_, term.imag());
    }
    cplx value() const noexcept { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(double& sum, double& comp, double x) noexcept {
        const double t = sum + x;
        if ((sum >= 0 ? sum : -sum) >= (x >= 0 ? x : -x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double re_ = 0.0, re_c_ = 0.0;
    double im_ = 0.0, im_c_ = 0.0;
};

/// Table of e(r / m) for all residues r of one modulus.
class PhaseTable {
public:
    explicit PhaseTable(u64 m);
    cplx operator[](u64 r) const noexcept { return table_[r]; }
    u64 modulus() const noexcept { return m_; }

private:
    u64 m_;
    std::vector<cplx> table_;
};

/// Fixed-shape pairwise reduction.
double pairwise_sum(std::span<const double> values) noexcept;
cplx pairwise_sum(std::span<const cplx> values) noexcept;

/// sum_{t=0}^{count-1} e(r_t / m) with r_0 = start, r_{t+1} = r_t * b mod m.
cplx orbit_sum_serial(u64 start, u64 b, u64 m, u64 count);
cplx orbit_sum_omp(u64 start, u64 b, u64 m, u64 count);

/// Partial sums of the same orbit at each (ascending) checkpoint in one pass.
std::vector<cplx> orbit_prefix_sums(u64 start, u64 b, u64 m, std::span<const u64> checkpoints);

/// For residues r_1..r_N (r_n = a b^n mod m) and lag step tau, returns for
/// each i with i*tau < N the magnitude |sum_{n=1}^{N - i tau} e((r_{n+i tau} - r_n) / m)|.
std::vector<double> lag_sum_magnitudes_serial(std::span<const u64> residues, u64 m, u64 tau);
std::vector<double> lag_sum_magnitudes_omp(std::span<const u64> residues, u64 m, u64 tau);

}  // namespace korosum::kernels
