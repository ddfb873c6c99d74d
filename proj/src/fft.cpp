#include "fft.hpp"

#include <cstring>
#include <mutex>

namespace lattice::detail {

namespace {
std::mutex& planner_mutex() {
    static std::mutex mtx;
    return mtx;
}
}  // namespace

RealFourier::RealFourier(int n) : n_(n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    real_buf_ = fftw_alloc_real(n_);
    cplx_buf_ = fftw_alloc_complex(half());
    plan_c2r_ = fftw_plan_dft_c2r_1d(n_, cplx_buf_, real_buf_, FFTW_ESTIMATE);
    plan_r2c_ = fftw_plan_dft_r2c_1d(n_, real_buf_, cplx_buf_, FFTW_ESTIMATE);
}

RealFourier::~RealFourier() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_c2r_);
    fftw_destroy_plan(plan_r2c_);
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

void RealFourier::synthesize(const std::complex<double>* spec, double* out) {
    std::memcpy(cplx_buf_, spec, sizeof(fftw_complex) * half());
    fftw_execute(plan_c2r_);
    std::memcpy(out, real_buf_, sizeof(double) * n_);
}

void RealFourier::analyze(const double* x, std::complex<double>* spec) {
    std::memcpy(real_buf_, x, sizeof(double) * n_);
    fftw_execute(plan_r2c_);
    std::memcpy(spec, cplx_buf_, sizeof(fftw_complex) * half());
}

}  // namespace lattice::detail
