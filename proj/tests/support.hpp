#pragma once

#include "photon_slh/photon_slh.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

namespace photon_slh::testing {

// PHOTON_SLH_SEED overrides the default seed 0.
inline std::uint64_t seed() {
  const char* s = std::getenv("PHOTON_SLH_SEED");
  return s && *s ? std::stoull(s) : 0;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(seed() ^ salt); }

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix beamsplitter() {
  const double r = 1.0 / std::sqrt(2.0);
  return mat2(r, Complex(0, r), Complex(0, r), r);
}

inline Matrix swap_matrix() { return mat2(0, 1, 1, 0); }

}  // namespace photon_slh::testing
