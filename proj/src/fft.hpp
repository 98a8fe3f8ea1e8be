#pragma once

// FFTW-backed transforms used by the Weyl pair and the smoothing code.
// Plans own fftw-aligned buffers, so results do not depend on the caller's
// allocation alignment (reports must be bitwise reproducible).

#include "pslab/phase_space.hpp"

#include <complex>
#include <span>

namespace pslab::detail {

enum class FftSign { forward = -1, backward = +1 };

/// Unnormalised 1D DFT: out[k] = sum_n in[n] exp(sign * 2 pi i k n / N).
class Fft1d {
public:
    Fft1d(int n, FftSign sign);
    ~Fft1d();
    Fft1d(const Fft1d&) = delete;
    Fft1d& operator=(const Fft1d&) = delete;

    int size() const { return n_; }
    /// Transforms `data` in place (data.size() must equal size()).
    void operator()(std::span<std::complex<double>> data);

private:
    int n_;
    void* buffer_;
    void* plan_;
};

using ComplexArray = Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                  Eigen::RowMajor>;

/// Unnormalised 2D DFT on a row-major array, in place.
class Fft2d {
public:
    Fft2d(int rows, int cols, FftSign sign);
    ~Fft2d();
    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;

    void operator()(ComplexArray& data);

private:
    int rows_;
    int cols_;
    void* buffer_;
    void* plan_;
};

/// Periodic convolution sum_{z'} a(z') b(z - z') on an N x M grid whose origin
/// sits at index (N/2, M/2) for `b`. No quadrature weight is applied.
RealArray convolve_centered(const RealArray& a, const RealArray& b);

} // namespace pslab::detail
