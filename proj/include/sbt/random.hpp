#pragma once

// Seeded random test functions. Each coefficient is drawn from its own
// generator keyed by (seed, stream, label), so enlarging the cutoff leaves
// the existing coefficients unchanged.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sbt/hermite.hpp"
#include "sbt/spectrum.hpp"

namespace sbt {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t stream, const std::vector<int>& label) {
  std::uint64_t h = mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL));
  for (int v : label) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
  return h;
}

inline cplx gaussian_pair(std::uint64_t k) {
  std::mt19937_64 gen(k);
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(gen);
  const double im = nd(gen);
  return {re, im};
}

}  // namespace detail

/// c_label = Z / (1 + lambda^2)^{decay/2} / sqrt(d), Z standard complex normal.
inline SpectralCoefficients random_coefficients(std::shared_ptr<const IrrepSpectrum> spectrum, std::uint64_t seed,
                                                std::uint64_t stream = 0, double decay = 2.0) {
  SpectralCoefficients c(spectrum);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const IrrepEntry& e = spectrum->entries()[i];
    c[i] = detail::gaussian_pair(detail::key(seed, stream, e.label)) * std::pow(1.0 + e.lambda2, -0.5 * decay) /
           std::sqrt(double(e.dim));
  }
  return c;
}

/// c_alpha = Z / (1 + |alpha|)^decay.
inline HermiteExpansion random_expansion(int n, int cutoff, std::uint64_t seed, std::uint64_t stream = 0,
                                         double decay = 1.0) {
  HermiteExpansion e(n, cutoff);
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = detail::gaussian_pair(detail::key(seed, stream + 0x5eed, e.alpha(i))) * std::pow(1.0 + e.level(i), -decay);
  return e;
}

}  // namespace sbt
