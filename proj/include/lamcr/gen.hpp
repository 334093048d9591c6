#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lamcr/join.hpp"
#include "lamcr/reduction.hpp"
#include "lamcr/term.hpp"

namespace lamcr {

using Rng = std::mt19937_64;

struct GenConfig {
  std::size_t max_size = 12;
  std::vector<std::string> free_pool = {"p", "q", "z"};
  // Node-kind weights; applications dominate slightly to keep terms redex-rich.
  unsigned weight_abs = 3;
  unsigned weight_app = 4;
  unsigned weight_var = 3;
  std::size_t growth_limit = 4096;  // stop walks when terms outgrow this
};

TermPtr random_term(Rng& rng, const GenConfig& cfg);

// Forward walk of at most `max_len` random contractions (fewer on normal form
// or when the growth limit is hit).
ReductionPath random_path(Rng& rng, const TermPtr& start, std::size_t max_len,
                          const GenConfig& cfg);

// Valid-by-construction equality chain of at most k links: Right links take a
// fresh random contraction, Left links retrace a previously descended step.
EqualityChain random_chain(Rng& rng, std::size_t k, const GenConfig& cfg);

// A peak P_n <<- M ->> Q_m with n <= m from a common random source.
std::pair<ReductionPath, ReductionPath> random_peak(Rng& rng, std::size_t n, std::size_t m,
                                                    const GenConfig& cfg);

}  // namespace lamcr
