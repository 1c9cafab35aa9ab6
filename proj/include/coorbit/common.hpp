#pragma once

// Shared scalar types, deterministic RNG, and small numeric helpers.
// All reductions in the library run in a fixed order so that repeated
// runs of the same binary produce bit-identical output.

#include <cstdint>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace coorbit {

using cplx = std::complex<double>;
using real_vec = std::vector<double>;
using cplx_vec = std::vector<cplx>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr double INF = std::numeric_limits<double>::infinity();

inline bool is_inf(double x) { return std::isinf(x); }

// Value plus advisory flags (truncation warnings and the like).
struct Flagged {
  double value = 0.0;
  std::vector<std::string> flags;
};

// xoshiro256** seeded through splitmix64: deterministic across platforms,
// unlike the distributions in <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) {
      s += 0x9E3779B97F4A7C15ull;
      std::uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      w = z ^ (z >> 31);
    }
  }
  std::uint64_t next_u64() {
    auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }
  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // standard normal, Box-Muller; consumes two uniforms per pair
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * PI * u2);
  }

 private:
  std::uint64_t state_[4] = {};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Deterministic parallel-for: [0, count) is split into contiguous blocks,
// each block written by one worker into caller-owned slots. The result does
// not depend on the number of threads.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t nt = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t chunk = (count + nt - 1) / nt;
  for (std::size_t w = 0; w < nt; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// process-wide worker count for the parallel kernel-table fills; results are
// identical for every setting because blocks write disjoint slots
inline int& worker_threads() {
  static int count = 1;
  return count;
}

}  // namespace coorbit
