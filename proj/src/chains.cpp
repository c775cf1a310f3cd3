#include "fg/chains.hpp"

namespace fg {

Chain Chain::from_automata(std::vector<StallingsAutomaton> stages) {
  if (stages.empty()) throw std::invalid_argument("chain needs at least one stage");
  for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
    if (stages[i].alphabet() != stages[i + 1].alphabet())
      throw std::invalid_argument("chain stages use different alphabets");
    for (const Word& b : stages[i].basis())
      if (!stages[i + 1].member(b))
        throw ChainError(i + 1, format_word(stages[i].alphabet(), b),
                         "chain is not ascending: stage " + std::to_string(i + 1) +
                             " has a basis word outside stage " + std::to_string(i + 2));
  }
  Chain c;
  for (auto& s : stages) c.ranks_.push_back(s.rank());
  c.stages_ = std::move(stages);
  return c;
}

namespace {

bool stages_equal(const StallingsAutomaton& x, const StallingsAutomaton& y,
                  ChainEquality equality) {
  if (equality == ChainEquality::kCanonical) return x == y;
  for (const Word& b : x.basis())
    if (!y.member(b)) return false;
  for (const Word& b : y.basis())
    if (!x.member(b)) return false;
  return true;
}

}  // namespace

std::optional<std::size_t> stabilization_index(const Chain& chain, ChainEquality equality) {
  const auto& stages = chain.stages();
  if (stages.size() < 2) return std::nullopt;
  // scan backwards for the last index where the chain still moves
  std::size_t t = stages.size();
  while (t >= 2 && stages_equal(stages[t - 2], stages[t - 1], equality)) --t;
  if (t == stages.size()) return std::nullopt;
  return t;
}

Chain strict_rank_chain(int n, int max_n) {
  if (n < 2) throw std::invalid_argument("need at least 2 stages");
  if (n > max_n)
    throw std::invalid_argument("stage count exceeds the cap (word lengths are 2^(n-i)+2)");
  const Alphabet a = Alphabet::lowercase(5);  // a, b, c, d, e
  const Letter A = 1, B = 2, C = 3, D = 4, E = 5;

  std::vector<Word> h1 = {
      Word::reduce({A, C, -B}),
      Word::reduce({A, -C, -B}),
      Word::reduce({A, D, -B}),
      Word::reduce({A, -D, -B}),
  };

  std::vector<StallingsAutomaton> stages;
  stages.push_back(subgroup_automaton(a, h1));
  for (int i = 2; i <= n; ++i) {
    std::vector<Word> gens = h1;
    gens.push_back(Word::reduce({A, -B}));
    std::vector<Letter> mid{A};
    const long long e_power = 1ll << (n - i);
    for (long long k = 0; k < e_power; ++k) mid.push_back(E);
    mid.push_back(-B);
    gens.push_back(Word::reduce(mid));
    stages.push_back(subgroup_automaton(a, gens));
  }
  return Chain::from_automata(std::move(stages));
}

FixChain fix_chain(const Endomorphism& phi, const Alphabet& a, int k_max,
                   const SearchBudget& budget) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  std::vector<StallingsAutomaton> stages;
  std::vector<FixChainStage> meta;
  long long exponent = 1;
  for (int m = 1; m <= k_max; ++m) {
    exponent *= m;
    FixedSearchResult fix = fixed_search(phi, a, exponent, budget);
    meta.push_back(FixChainStage{exponent, fix.budget_skipped});
    stages.push_back(std::move(fix.approximation));
  }
  return FixChain{Chain::from_automata(std::move(stages)), std::move(meta)};
}

}  // namespace fg
