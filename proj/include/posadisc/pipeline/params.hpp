#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "posadisc/error.hpp"

namespace posadisc {

/// Explicit constants of the embedding pipeline. The asymptotic hierarchy
/// between them is only advised (see check_params), never enforced.
struct PipelineParams {
  int r = 3;
  std::optional<double> eta;  // d defaults to eta/3 when only eta is given
  double d = 0.5;
  double eps = 0.05;
  double alpha = 0.1;
  int m = 64;
  std::uint64_t seed = 0;
  int exceptional = 2;        // synthetic V_0 size
  int shared = -1;            // leading tiles forming K; -1 means every tile
  std::uint64_t fill_iterations = 4'000'000;
};

inline PipelineParams params_from_eta(double eta) {
  PipelineParams p;
  p.eta = eta;
  p.d = eta / 3.0;
  return p;
}

/// Throws on invalid values; returns warnings when eps << alpha << eta is not respected.
inline std::vector<std::string> check_params(const PipelineParams& p) {
  require(p.r >= 2, ErrorKind::InvalidArgument, "pipeline needs r >= 2");
  require(p.eps > 0 && p.eps < p.d && p.d < 1, ErrorKind::InvalidArgument, "need 0 < eps < d < 1");
  require(p.alpha > 0, ErrorKind::InvalidArgument, "alpha must be positive");
  require(p.m >= 1, ErrorKind::InvalidArgument, "cluster size must be positive");
  require(p.exceptional >= 0, ErrorKind::InvalidArgument, "exceptional count must be non-negative");
  require(p.fill_iterations > 0, ErrorKind::InvalidArgument, "fill iteration budget must be positive");
  std::vector<std::string> warnings;
  if (!(p.eps < p.alpha)) warnings.push_back("eps is not below alpha");
  if (p.eta) {
    if (!(*p.eta > 0 && *p.eta < 1)) warnings.push_back("eta outside (0,1)");
    if (!(p.alpha < *p.eta)) warnings.push_back("alpha is not below eta");
    if (std::abs(p.d - *p.eta / 3.0) > 1e-12) warnings.push_back("d differs from eta/3");
  }
  return warnings;
}

/// Stages draw from independent streams keyed by (seed, stage, index), so one
/// stage's consumption never shifts another's.
enum class Stream : std::uint32_t { Pair = 1, Exceptional = 2, Fill = 3, Slice = 4 };

inline std::mt19937_64 stream(std::uint64_t seed, Stream s, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace posadisc
