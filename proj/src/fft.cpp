#include "coorbit/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace coorbit {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* buf = nullptr;
  std::size_t n = 0;
};

// Plan cache keyed by size. Plans execute on their own fftw-aligned buffer;
// data is copied in and out, which costs little next to the transform.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }
  void run(cplx_vec& a, bool forward) {
    std::lock_guard<std::mutex> lock(mu_);
    PlanPair& p = plans_[a.size()];
    if (!p.fwd) {
      p.n = a.size();
      p.buf = fftw_alloc_complex(p.n);
      p.fwd = fftw_plan_dft_1d(static_cast<int>(p.n), p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
      p.bwd = fftw_plan_dft_1d(static_cast<int>(p.n), p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    // std::complex<double> is layout-compatible with fftw_complex
    std::memcpy(p.buf, static_cast<const void*>(a.data()), sizeof(cplx) * p.n);
    fftw_execute(forward ? p.fwd : p.bwd);
    std::memcpy(static_cast<void*>(a.data()), p.buf, sizeof(cplx) * p.n);
  }

 private:
  PlanCache() = default;
  std::mutex mu_;
  std::map<std::size_t, PlanPair> plans_;
};

}  // namespace

void fft_forward(cplx_vec& a) {
  if (a.empty()) return;
  PlanCache::instance().run(a, true);
}

void fft_inverse(cplx_vec& a) {
  if (a.empty()) return;
  PlanCache::instance().run(a, false);
}

}  // namespace coorbit
