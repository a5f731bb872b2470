#pragma once

#include <cstdint>
#include <vector>

#include "hsvd/dense_matrix.hpp"

namespace hsvd {

/// Synthetic singular spectrum: sigma_1 = 1, a decay law up to `rank`, a
/// constant noise floor beyond it.
struct SpectrumSpec {
  enum class Kind { Exponential, PowerLaw, Explicit };

  Kind kind = Kind::Exponential;
  double ratio = 0.5;           // Exponential: sigma_i = ratio^(i-1), ratio in (0,1)
  double exponent = 1.0;        // PowerLaw: sigma_i = i^-exponent, exponent > 0
  std::vector<double> values;   // Explicit: given values, rescaled so sigma_1 = 1
  Index rank = 1;
  double noise_floor = 0.0;     // sigma_i for i > rank
  std::uint64_t seed = 0;
};

struct GeneratedMatrix {
  DenseMatrix x;
  Vector true_sigma;  // the exact spectrum of x, length min(m, n), sorted
};

/// The spectrum vector of length p for the given descriptor (decay up to
/// rank, noise floor beyond, sorted nonincreasing).
Vector build_spectrum(Index p, const SpectrumSpec& spec);

/// Draws two seeded Gaussian matrices, orthonormalizes them with thin QR
/// and assembles X = U * diag(sigma) * V^T with the requested spectrum.
/// Deterministic for a fixed seed.
GeneratedMatrix gen_low_rank(Index m, Index n, const SpectrumSpec& spec);

}  // namespace hsvd
