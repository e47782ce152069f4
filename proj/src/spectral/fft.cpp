#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "rotwave/spectral.hpp"

namespace rotwave {

namespace {

// Planning is not thread-safe in FFTW; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// One in-place c2c plan pair with its own aligned buffer. Every transform
// copies through this buffer, so the codelets chosen never depend on the
// caller's alignment and results are bit-reproducible.
class FftPlan {
 public:
  FftPlan(int nx, int ny) : n_(static_cast<std::size_t>(nx) * ny) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf_ = fftw_alloc_complex(n_);
    fwd_ = fftw_plan_dft_2d(nx, ny, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(nx, ny, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  Complex* buffer() { return reinterpret_cast<Complex*>(buf_); }
  void forward() { fftw_execute(fwd_); }
  void backward() { fftw_execute(bwd_); }

 private:
  std::size_t n_;
  fftw_complex* buf_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

struct PlanCache {
  std::map<std::pair<int, int>, std::unique_ptr<FftPlan>> plans;
};

std::size_t& global_plan_count() {
  static std::size_t n = 0;
  return n;
}

FftPlan& plan_for(const Grid2D& g) {
  thread_local PlanCache cache;
  auto key = std::make_pair(g.nx(), g.ny());
  auto it = cache.plans.find(key);
  if (it == cache.plans.end()) {
    it = cache.plans.emplace(key, std::make_unique<FftPlan>(g.nx(), g.ny())).first;
    std::lock_guard<std::mutex> lock(planner_mutex());
    ++global_plan_count();
  }
  return *it->second;
}

}  // namespace

SpectralField forward(const RealField& f) {
  FftPlan& p = plan_for(f.grid());
  Complex* b = p.buffer();
  for (std::size_t k = 0; k < f.size(); ++k) b[k] = Complex(f[k], 0.0);
  p.forward();
  return SpectralField(f.grid(), std::vector<Complex>(b, b + f.size()));
}

SpectralField forward(const ComplexField& f) {
  FftPlan& p = plan_for(f.grid());
  Complex* b = p.buffer();
  std::copy(f.values().begin(), f.values().end(), b);
  p.forward();
  return SpectralField(f.grid(), std::vector<Complex>(b, b + f.size()));
}

RealField inverse(const SpectralField& F) {
  FftPlan& p = plan_for(F.grid());
  Complex* b = p.buffer();
  std::copy(F.coeffs().begin(), F.coeffs().end(), b);
  p.backward();
  const double scale = 1.0 / static_cast<double>(F.size());
  RealField out(F.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = b[k].real() * scale;
  return out;
}

ComplexField inverse_complex(const SpectralField& F) {
  FftPlan& p = plan_for(F.grid());
  Complex* b = p.buffer();
  std::copy(F.coeffs().begin(), F.coeffs().end(), b);
  p.backward();
  const double scale = 1.0 / static_cast<double>(F.size());
  ComplexField out(F.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = b[k] * scale;
  return out;
}

std::size_t fft_plan_count() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  return global_plan_count();
}

}  // namespace rotwave
