#pragma once

#include <cstdint>
#include <random>

#include "gswcert/scalar.hpp"

namespace gswcert {

// Deterministic 64-bit generator (mt19937_64 is fully specified by the
// standard, so streams are identical across platforms).  Uniform draws pass
// through an exact 53-bit dyadic rational before being widened, keeping
// every sampled Scalar reproducible bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  Scalar uniform(const PrecisionConfig& cfg, double lo, double hi) {
    Scalar u = Scalar::from_double(uniform01(), cfg.precision_bits);
    Scalar a = Scalar::from_double(lo, cfg.precision_bits);
    Scalar b = Scalar::from_double(hi, cfg.precision_bits);
    return a + (b - a) * u;
  }

  // Standard exponential via inversion; used for simplex sampling.
  Scalar exponential(const PrecisionConfig& cfg) {
    double u = uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    return -log(Scalar::from_double(u, cfg.precision_bits));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace gswcert
