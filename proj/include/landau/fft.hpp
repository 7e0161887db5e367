#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace landau {

// Shared FFTW plans per cube size. Plans are created with
// FFTW_ESTIMATE (FFTW_MEASURE picks algorithms by timing and would break
// run-to-run bitwise reproducibility) and FFTW_UNALIGNED so they can execute
// on ordinary std::vector storage via the new-array interface. All transforms
// are unnormalized; callers apply 1/n^3 where needed.
class FftPlans {
 public:
  static const FftPlans& get(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<FftPlans>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[n];
    if (!slot) slot = std::unique_ptr<FftPlans>(new FftPlans(n));
    return *slot;
  }

  int n() const { return n_; }
  std::size_t real_size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  std::size_t cplx_half_size() const {
    return static_cast<std::size_t>(n_) * n_ * (n_ / 2 + 1);
  }

  void r2c(double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(r2c_, in, reinterpret_cast<fftw_complex*>(out));
  }
  // note: FFTW c2r destroys its input
  void c2r(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(c2r_, reinterpret_cast<fftw_complex*>(in), out);
  }
  void fwd(std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(fwd_, reinterpret_cast<fftw_complex*>(in),
                     reinterpret_cast<fftw_complex*>(out));
  }
  void bwd(std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(bwd_, reinterpret_cast<fftw_complex*>(in),
                     reinterpret_cast<fftw_complex*>(out));
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  ~FftPlans() {
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }

 private:
  explicit FftPlans(int n) : n_(n) {
    std::vector<double> sr(real_size());
    std::vector<std::complex<double>> sc(cplx_half_size());
    std::vector<std::complex<double>> sa(real_size()), sb(real_size());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    r2c_ = fftw_plan_dft_r2c_3d(n, n, n, sr.data(), reinterpret_cast<fftw_complex*>(sc.data()),
                                flags);
    c2r_ = fftw_plan_dft_c2r_3d(n, n, n, reinterpret_cast<fftw_complex*>(sc.data()), sr.data(),
                                flags);
    fwd_ = fftw_plan_dft_3d(n, n, n, reinterpret_cast<fftw_complex*>(sa.data()),
                            reinterpret_cast<fftw_complex*>(sb.data()), FFTW_FORWARD, flags);
    bwd_ = fftw_plan_dft_3d(n, n, n, reinterpret_cast<fftw_complex*>(sa.data()),
                            reinterpret_cast<fftw_complex*>(sb.data()), FFTW_BACKWARD, flags);
  }

  int n_;
  fftw_plan r2c_, c2r_, fwd_, bwd_;
};

}  // namespace landau
