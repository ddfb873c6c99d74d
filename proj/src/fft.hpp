#pragma once

#include <fftw3.h>

#include <complex>
#include <vector>

namespace lattice::detail {

/// Thin RAII wrapper around FFTW half-complex transforms of a fixed odd
/// size. Plans use FFTW_ESTIMATE so the algorithm choice (and therefore the
/// rounding pattern) never depends on runtime measurements.
class RealFourier {
  public:
    explicit RealFourier(int n);
    ~RealFourier();
    RealFourier(const RealFourier&) = delete;
    RealFourier& operator=(const RealFourier&) = delete;

    int size() const { return n_; }
    int half() const { return n_ / 2 + 1; }

    /// out_j = sum_{k} spec_k e^{2 pi i jk/N} with Hermitian extension of the
    /// given half spectrum (unnormalized FFTW backward transform).
    void synthesize(const std::complex<double>* spec, double* out);

    /// spec_k = sum_j x_j e^{-2 pi i jk/N} for k = 0..N/2 (unnormalized).
    void analyze(const double* x, std::complex<double>* spec);

  private:
    int n_;
    double* real_buf_;
    fftw_complex* cplx_buf_;
    fftw_plan plan_c2r_;
    fftw_plan plan_r2c_;
};

}  // namespace lattice::detail
