#include "fg/experiment.hpp"

#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

#include "fg/bounds.hpp"

namespace fg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Runs trial bodies over a small pool; results land in a pre-sized vector by
// trial index, so scheduling never shows in the report.  The first exception
// from any worker is rethrown on the calling thread.
void run_pool(int trials, int threads, const std::function<void(int)>& body) {
  if (trials <= 0) return;
  unsigned n = threads > 0 ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(trials));
  if (n <= 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i)
    pool.emplace_back([&] {
      try {
        for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  return std::mt19937_64(splitmix64(seed ^ (0x5851f42d4c957f2dull * (trial + 1))));
}

Word random_reduced_word(std::mt19937_64& rng, int alphabet_size, int min_len, int max_len) {
  std::uniform_int_distribution<int> len_dist(min_len, max_len);
  const int len = len_dist(rng);
  std::vector<Letter> out;
  out.reserve(len);
  std::uniform_int_distribution<int> first(0, 2 * alphabet_size - 1);
  std::uniform_int_distribution<int> rest(0, 2 * alphabet_size - 2);
  auto decode = [&](int code) {
    int letter = code / 2 + 1;
    return static_cast<Letter>(code % 2 == 0 ? letter : -letter);
  };
  for (int i = 0; i < len; ++i) {
    Letter l;
    if (out.empty()) {
      l = decode(first(rng));
    } else {
      // skip the inverse of the previous letter
      int code = rest(rng);
      Letter forbidden = -out.back();
      int forbidden_code = (std::abs(forbidden) - 1) * 2 + (forbidden < 0 ? 1 : 0);
      if (code >= forbidden_code) ++code;
      l = decode(code);
    }
    out.push_back(l);
  }
  return Word::from_reduced(std::move(out));
}

std::vector<Word> random_generators(std::mt19937_64& rng, const ExperimentConfig& cfg) {
  std::uniform_int_distribution<int> count(cfg.min_generators, cfg.max_generators);
  const int k = count(rng);
  std::vector<Word> gens;
  gens.reserve(k);
  for (int i = 0; i < k; ++i)
    gens.push_back(random_reduced_word(rng, cfg.alphabet_size, cfg.min_word_len, cfg.max_word_len));
  return gens;
}

HncReport run_hnc_suite(const ExperimentConfig& cfg) {
  HncReport report{cfg, std::vector<HncTrial>(std::max(cfg.trials, 0)), 0};
  const Alphabet a = Alphabet::lowercase(cfg.alphabet_size);
  run_pool(cfg.trials, cfg.threads, [&](int t) {
    auto rng = trial_rng(cfg.seed, t);
    StallingsAutomaton h1 = subgroup_automaton(a, random_generators(rng, cfg));
    StallingsAutomaton h2 = subgroup_automaton(a, random_generators(rng, cfg));
    HncTrial& trial = report.trials[t];
    trial.rank1 = h1.rank();
    trial.rank2 = h2.rank();
    trial.rank_meet = intersect(h1, h2).rank();
    trial.bound = (trial.rank1 - 1) * (trial.rank2 - 1) + 1;
    trial.pass = trial.rank_meet <= trial.bound;
  });
  for (const auto& t : report.trials)
    if (!t.pass) ++report.violations;
  return report;
}

IndexRankReport run_index_rank_suite(const ExperimentConfig& cfg, int words_per_attempt) {
  IndexRankReport report{cfg, std::vector<IndexRankTrial>(std::max(cfg.trials, 0)), 0};
  const Alphabet a = Alphabet::lowercase(cfg.alphabet_size);
  run_pool(cfg.trials, cfg.threads, [&](int t) {
    auto rng = trial_rng(cfg.seed, t);
    IndexRankTrial& trial = report.trials[t];
    // Words are drawn from the kernel of the exponent-sum map onto Z/k for a
    // random k, so the closures settle at a spread of indices instead of
    // racing to the whole group.
    std::uniform_int_distribution<int> modulus(1, 4);
    const int k = modulus(rng);
    auto kernel_word = [&] {
      for (int attempt = 0; attempt < 200; ++attempt) {
        Word w = random_reduced_word(rng, cfg.alphabet_size, cfg.min_word_len, cfg.max_word_len);
        long long total = 0;
        for (Letter l : w.letters()) total += l > 0 ? 1 : -1;
        if (((total % k) + k) % k == 0) return w;
      }
      return random_reduced_word(rng, cfg.alphabet_size, cfg.min_word_len, cfg.max_word_len);
    };
    // add random words until the subgroup has finite index; capped, so a
    // stubborn attempt restarts with fresh words
    while (true) {
      std::vector<Word> gens;
      for (int i = 0; i < words_per_attempt; ++i) {
        gens.push_back(kernel_word());
        StallingsAutomaton aut = subgroup_automaton(a, gens);
        if (auto idx = aut.index()) {
          trial.index = *idx;
          trial.rank = aut.rank();
          trial.generators_used = static_cast<int>(gens.size());
          trial.expected = *idx * (cfg.alphabet_size - 1) + 1;
          trial.pass = trial.rank == trial.expected;
          return;
        }
      }
    }
  });
  for (const auto& t : report.trials)
    if (!t.pass) ++report.violations;
  return report;
}

ConfluenceReport run_confluence_suite(const ExperimentConfig& cfg, int orders_per_trial) {
  ConfluenceReport report{cfg, cfg.trials, orders_per_trial, 0};
  const Alphabet a = Alphabet::lowercase(cfg.alphabet_size);
  std::vector<int> bad(std::max(cfg.trials, 0), 0);
  run_pool(cfg.trials, cfg.threads, [&](int t) {
    auto rng = trial_rng(cfg.seed, t);
    GraphBuilder flower = GraphBuilder::flower(a, random_generators(rng, cfg));
    std::string reference = flower.fold().canonical_encoding();
    for (int i = 0; i < orders_per_trial; ++i) {
      std::uint64_t order_seed = rng();
      if (flower.fold(order_seed).canonical_encoding() != reference) bad[t] = 1;
    }
  });
  for (int b : bad) report.violations += b;
  return report;
}

VfreeBoundReport run_vfree_bound_suite(const ExperimentConfig& cfg,
                              std::shared_ptr<const ExtensionData> data) {
  VfreeBoundReport report{cfg, std::vector<VfreeBoundTrial>(std::max(cfg.trials, 0)), 0};
  const ExtensionData& G = *data;
  const int m = G.quotient().order();
  run_pool(cfg.trials, cfg.threads, [&](int t) {
    auto rng = trial_rng(cfg.seed, t);
    std::uniform_int_distribution<int> qdist(0, m - 1);
    auto random_subgroup = [&] {
      std::uniform_int_distribution<int> count(cfg.min_generators, cfg.max_generators);
      std::vector<ExtensionElement> gens;
      const int k = count(rng);
      for (int i = 0; i < k; ++i)
        gens.push_back(ExtensionElement{
            random_reduced_word(rng, cfg.alphabet_size, cfg.min_word_len, cfg.max_word_len),
            qdist(rng)});
      return close_subgroup(data, std::move(gens));
    };
    SubgroupHandle h1 = random_subgroup();
    SubgroupHandle h2 = random_subgroup();
    SubgroupIntersection meet = subintersect(h1, h2);

    VfreeBoundTrial& trial = report.trials[t];
    trial.n1 = static_cast<int>(h1.generators().size());
    trial.n2 = static_cast<int>(h2.generators().size());
    trial.rank_k1 = h1.k_automaton().rank();
    trial.rank_k2 = h2.k_automaton().rank();
    trial.observed = meet.certificate.rank_upper_bound;
    trial.bound =
        static_cast<std::int64_t>(m) * m * (trial.n1 - 1) * (trial.n2 - 1) + m;
    trial.intersection_pass = trial.observed <= trial.bound;
    trial.k_bound_pass = trial.rank_k1 <= static_cast<std::int64_t>(m) * (trial.n1 - 1) + 1 &&
                         trial.rank_k2 <= static_cast<std::int64_t>(m) * (trial.n2 - 1) + 1;
  });
  for (const auto& t : report.trials)
    if (!t.intersection_pass || !t.k_bound_pass) ++report.violations;
  return report;
}

}  // namespace fg
