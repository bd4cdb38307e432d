#pragma once

// Seeded random game-parameter generator for verification runs. All
// randomness derives from a single seed via per-trial splitmix64
// streams, so outputs are reproducible bit-for-bit on any platform and
// trials can be evaluated in any order.
//
// Bounds are chosen so every theorem branch is reachable, not to mimic
// typical instances: beta2 log-uniform [0.5, 50], beta1 = beta2 *
// uniform(1.01, 10), e2 uniform [1, 10], dE log-uniform [0.01, 100],
// e1 = e2 + dE, r log-uniform [0.1, 20], t_o = 10.

#include <cmath>
#include <cstdint>

#include "ffg/game.hpp"

namespace ffg {

struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + u01() * (hi - lo); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
};

struct ParamGen {
  std::uint64_t seed = 0;

  SplitMix64 stream(std::uint64_t trial) const {
    SplitMix64 rng{seed ^ (0xD1B54A32D192ED03ULL * (trial + 1))};
    rng.next();
    rng.next();
    return rng;
  }

  GameParams draw(std::uint64_t trial, double w = 1.0) const {
    SplitMix64 rng = stream(trial);
    GameParams p;
    p.beta2 = rng.log_uniform(0.5, 50.0);
    p.beta1 = p.beta2 * rng.uniform(1.01, 10.0);
    p.e2 = rng.uniform(1.0, 10.0);
    p.e1 = p.e2 + rng.log_uniform(0.01, 100.0);
    p.r = rng.log_uniform(0.1, 20.0);
    p.t_o = 10.0;
    p.w = w;
    return p;
  }
};

}  // namespace ffg
