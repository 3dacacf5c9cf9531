#pragma once

#include <cstdint>
#include <random>

#include "nullfoliate/matrix.hpp"

namespace nf {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 with explicit bounded sampling so streams match across
// standard libraries (std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  static Rng for_case(std::uint64_t seed, std::uint64_t case_id) {
    return Rng(splitmix64(seed ^ splitmix64(case_id + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next() { return eng_(); }

  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
    std::uint64_t r;
    do {
      r = eng_();
    } while (limit != 0 && r >= limit);
    return lo + static_cast<long>(span == 0 ? r : r % span);
  }

  bool coin() { return (eng_() >> 63) != 0; }

  double real() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double normal_ish() { return 2.0 * real() - 1.0; }

  Scalar integer(long bound) { return Scalar(uniform(-bound, bound)); }
  Scalar gaussian(long bound) { return Scalar::gaussian(uniform(-bound, bound), uniform(-bound, bound)); }
  Scalar rational(long bound) {
    long den = uniform(1, bound);
    return Scalar::rational(uniform(-bound, bound), den);
  }

  Vec<Scalar> gaussian_vec(int n, long bound) {
    Vec<Scalar> v(n);
    for (auto& e : v) e = gaussian(bound);
    return v;
  }
  Vec<Scalar> integer_vec(int n, long bound) {
    Vec<Scalar> v(n);
    for (auto& e : v) e = integer(bound);
    return v;
  }
  Vec<Scalar> nonzero_gaussian_vec(int n, long bound) {
    Vec<Scalar> v;
    do {
      v = gaussian_vec(n, bound);
    } while (is_zero(v));
    return v;
  }
  Vec<cplx> complex_vec(int n) {
    Vec<cplx> v(n);
    for (auto& e : v) e = cplx(normal_ish(), normal_ish());
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace nf
