#pragma once

#include <cstdint>

#include "lmst/formula.hpp"

namespace lmst {

/// splitmix64; self-contained so corpora are identical across platforms
/// and standard libraries.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  bool chance(int pct) { return below(100) < pct; }
};

struct GenConfig {
  std::uint64_t seed = 1;
  int count = 1000;
  int max_atoms = 6;
  int max_vars = 4;
  bool allow_defined = true;
};

Formula random_formula(Rng& rng, const GenConfig& cfg);
std::vector<Formula> generate_corpus(const GenConfig& cfg);

}  // namespace lmst
