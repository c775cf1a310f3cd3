#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fg/extension.hpp"
#include "fg/stallings.hpp"
#include "fg/vfsub.hpp"

namespace fg {

// Seeded random model shared by every experiment: k generators, k uniform in
// [min_generators, max_generators], each a uniformly random reduced word of
// length uniform in [min_word_len, max_word_len].  Identical config and seed
// give identical reports, independent of the worker count.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  int alphabet_size = 2;
  int min_generators = 2;
  int max_generators = 4;
  int min_word_len = 1;
  int max_word_len = 6;
  int threads = 0;  // 0 = hardware concurrency
};

Word random_reduced_word(std::mt19937_64& rng, int alphabet_size, int min_len, int max_len);
std::vector<Word> random_generators(std::mt19937_64& rng, const ExperimentConfig& cfg);

// Deterministic per-trial stream.
std::mt19937_64 trial_rng(std::uint64_t seed, int trial);

// Intersection rank against the Hanna Neumann bound (r1-1)(r2-1)+1 on random
// subgroup pairs of the free group.
struct HncTrial {
  std::int64_t rank1 = 0, rank2 = 0, rank_meet = 0, bound = 0;
  bool pass = false;
};
struct HncReport {
  ExperimentConfig config;
  std::vector<HncTrial> trials;
  int violations = 0;
};
HncReport run_hnc_suite(const ExperimentConfig& cfg);

// Finite-index subgroups: random words are added until the fold becomes
// complete (capped per attempt, resampled on a miss); checks
// rank = index (|A|-1) + 1 exactly.
struct IndexRankTrial {
  std::int64_t index = 0, rank = 0, expected = 0;
  int generators_used = 0;
  bool pass = false;
};
struct IndexRankReport {
  ExperimentConfig config;
  std::vector<IndexRankTrial> trials;
  int violations = 0;
};
IndexRankReport run_index_rank_suite(const ExperimentConfig& cfg, int words_per_attempt = 64);

// Folding confluence: several randomized folding orders of one generator set
// must produce identical canonical encodings.
struct ConfluenceReport {
  ExperimentConfig config;
  int trials = 0;
  int orders_per_trial = 0;
  int violations = 0;
};
ConfluenceReport run_confluence_suite(const ExperimentConfig& cfg, int orders_per_trial = 5);

// Random subgroup pairs of a free-by-finite extension: certified intersection
// rank bound against m^2(n1-1)(n2-1)+m, and rk(K_j) against m(n_j-1)+1.
struct VfreeBoundTrial {
  int n1 = 0, n2 = 0;
  std::int64_t rank_k1 = 0, rank_k2 = 0;
  std::int64_t observed = 0, bound = 0;
  bool intersection_pass = false;
  bool k_bound_pass = false;
};
struct VfreeBoundReport {
  ExperimentConfig config;
  std::vector<VfreeBoundTrial> trials;
  int violations = 0;
};
VfreeBoundReport run_vfree_bound_suite(const ExperimentConfig& cfg,
                              std::shared_ptr<const ExtensionData> data);

}  // namespace fg
