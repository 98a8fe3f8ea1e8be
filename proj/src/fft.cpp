#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <new>

namespace pslab::detail {
namespace {

// The FFTW planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

Fft1d::Fft1d(int n, FftSign sign) : n_(n) {
    std::lock_guard lock(planner_mutex());
    auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    if (buf == nullptr) throw std::bad_alloc();
    buffer_ = buf;
    plan_ = fftw_plan_dft_1d(n, buf, buf, static_cast<int>(sign), FFTW_ESTIMATE);
}

Fft1d::~Fft1d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    fftw_free(buffer_);
}

void Fft1d::operator()(std::span<std::complex<double>> data) {
    auto* buf = static_cast<fftw_complex*>(buffer_);
    std::memcpy(buf, data.data(), sizeof(fftw_complex) * n_);
    fftw_execute(static_cast<fftw_plan>(plan_));
    std::memcpy(static_cast<void*>(data.data()), buf, sizeof(fftw_complex) * n_);
}

Fft2d::Fft2d(int rows, int cols, FftSign sign) : rows_(rows), cols_(cols) {
    std::lock_guard lock(planner_mutex());
    auto* buf = fftw_alloc_complex(static_cast<std::size_t>(rows) * cols);
    if (buf == nullptr) throw std::bad_alloc();
    buffer_ = buf;
    plan_ = fftw_plan_dft_2d(rows, cols, buf, buf, static_cast<int>(sign), FFTW_ESTIMATE);
}

Fft2d::~Fft2d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    fftw_free(buffer_);
}

void Fft2d::operator()(ComplexArray& data) {
    auto* buf = static_cast<fftw_complex*>(buffer_);
    const std::size_t bytes = sizeof(fftw_complex) * static_cast<std::size_t>(rows_) * cols_;
    std::memcpy(buf, data.data(), bytes);
    fftw_execute(static_cast<fftw_plan>(plan_));
    std::memcpy(static_cast<void*>(data.data()), buf, bytes);
}

RealArray convolve_centered(const RealArray& a, const RealArray& b) {
    const int rows = static_cast<int>(a.rows());
    const int cols = static_cast<int>(a.cols());
    // Move b's origin from (rows/2, cols/2) to (0, 0).
    ComplexArray fb(rows, cols);
    for (int j = 0; j < rows; ++j)
        for (int k = 0; k < cols; ++k)
            fb((j - rows / 2 + rows) % rows, (k - cols / 2 + cols) % cols) = b(j, k);
    ComplexArray fa = a.cast<std::complex<double>>();

    Fft2d forward(rows, cols, FftSign::forward);
    Fft2d backward(rows, cols, FftSign::backward);
    forward(fa);
    forward(fb);
    fa *= fb;
    backward(fa);
    return fa.real() / (static_cast<double>(rows) * cols);
}

} // namespace pslab::detail
