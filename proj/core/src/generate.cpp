#include "hsvd/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hsvd/kernels.hpp"

namespace hsvd {

namespace {

void validate(const SpectrumSpec& spec) {
  if (spec.rank < 1) throw std::invalid_argument("SpectrumSpec: rank must be >= 1");
  if (spec.noise_floor < 0.0)
    throw std::invalid_argument("SpectrumSpec: noise_floor must be >= 0");
  switch (spec.kind) {
    case SpectrumSpec::Kind::Exponential:
      if (!(spec.ratio > 0.0 && spec.ratio < 1.0))
        throw std::invalid_argument("SpectrumSpec: exponential ratio must be in (0,1)");
      break;
    case SpectrumSpec::Kind::PowerLaw:
      if (!(spec.exponent > 0.0))
        throw std::invalid_argument("SpectrumSpec: power-law exponent must be > 0");
      break;
    case SpectrumSpec::Kind::Explicit:
      if (spec.values.empty())
        throw std::invalid_argument("SpectrumSpec: explicit spectrum is empty");
      for (double v : spec.values)
        if (!(v >= 0.0) || !std::isfinite(v))
          throw std::invalid_argument("SpectrumSpec: explicit values must be finite and >= 0");
      break;
  }
}

DenseMatrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  DenseMatrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = dist(rng);
  return g;
}

}  // namespace

Vector build_spectrum(Index p, const SpectrumSpec& spec) {
  validate(spec);
  // An explicit list defines its own rank.
  const Index rank = spec.kind == SpectrumSpec::Kind::Explicit
                         ? std::min(static_cast<Index>(spec.values.size()), p)
                         : std::min(spec.rank, p);

  Vector sigma(p);
  switch (spec.kind) {
    case SpectrumSpec::Kind::Exponential:
      for (Index i = 0; i < rank; ++i) sigma(i) = std::pow(spec.ratio, static_cast<double>(i));
      break;
    case SpectrumSpec::Kind::PowerLaw:
      for (Index i = 0; i < rank; ++i)
        sigma(i) = std::pow(static_cast<double>(i + 1), -spec.exponent);
      break;
    case SpectrumSpec::Kind::Explicit: {
      const double top = *std::max_element(spec.values.begin(), spec.values.end());
      const double scale = top > 0.0 ? 1.0 / top : 1.0;
      for (Index i = 0; i < rank; ++i) sigma(i) = spec.values[static_cast<std::size_t>(i)] * scale;
      break;
    }
  }
  for (Index i = rank; i < p; ++i) sigma(i) = spec.noise_floor;

  std::sort(sigma.data(), sigma.data() + p, std::greater<double>());
  return sigma;
}

GeneratedMatrix gen_low_rank(Index m, Index n, const SpectrumSpec& spec) {
  if (m < 1 || n < 1) throw std::invalid_argument("gen_low_rank: dimensions must be >= 1");
  const Index spec_rank = spec.kind == SpectrumSpec::Kind::Explicit
                              ? static_cast<Index>(spec.values.size())
                              : spec.rank;
  if (spec_rank > std::min(m, n))
    throw std::invalid_argument("gen_low_rank: rank exceeds min(m, n)");

  const Index p = std::min(m, n);
  std::mt19937_64 rng(spec.seed);

  DenseMatrix u = qr_thin(gaussian(m, p, rng)).q;
  DenseMatrix v = qr_thin(gaussian(n, p, rng)).q;
  Vector sigma = build_spectrum(p, spec);

  GeneratedMatrix out;
  out.x = u * sigma.asDiagonal() * v.transpose();
  out.true_sigma = std::move(sigma);
  return out;
}

}  // namespace hsvd
