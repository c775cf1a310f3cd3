#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fg/dynamics.hpp"
#include "fg/stallings.hpp"

namespace fg {

struct ChainError : std::runtime_error {
  ChainError(std::size_t stage, std::string word, const std::string& what)
      : std::runtime_error(what), stage(stage), word(std::move(word)) {}
  std::size_t stage;  // 1-based stage whose element is missing from the next
  std::string word;
};

// Ascending chain of subgroups of a free group, one automaton per stage.
// Construction verifies the ascent (every basis word of a stage is a member
// of the next).
class Chain {
 public:
  static Chain from_automata(std::vector<StallingsAutomaton> stages);

  const std::vector<StallingsAutomaton>& stages() const { return stages_; }
  const std::vector<std::int64_t>& ranks() const { return ranks_; }
  std::size_t size() const { return stages_.size(); }

 private:
  Chain() = default;
  std::vector<StallingsAutomaton> stages_;
  std::vector<std::int64_t> ranks_;
};

enum class ChainEquality {
  kCanonical,         // bit-identical canonical encodings
  kMutualMembership,  // each basis contained in the other subgroup
};

// Least 1-based t < size such that stages t..size are all equal under the
// chosen test; nullopt when the chain never settles within the given stages.
std::optional<std::size_t> stabilization_index(const Chain& chain, ChainEquality equality);

// Strictly ascending chain of n subgroups of the free group on {a,b,c,d,e},
// every stage of rank 4.  Stage 1 is generated by a c b^-1, a c^-1 b^-1,
// a d b^-1, a d^-1 b^-1; stage i adds a b^-1 and a e^(2^(n-i)) b^-1.  Word
// lengths are exponential in n, so n is capped.
Chain strict_rank_chain(int n, int max_n = 12);

// Bounded approximations of the fixed subgroups Fix(phi^(m!)), m = 1..k_max.
// The factorial schedule makes consecutive exponents divide each other, so
// the stages ascend.
struct FixChainStage {
  long long exponent = 1;  // m!
  std::size_t budget_skipped = 0;
};

struct FixChain {
  Chain chain;
  std::vector<FixChainStage> stages;
};

FixChain fix_chain(const Endomorphism& phi, const Alphabet& a, int k_max,
                   const SearchBudget& budget = {});

}  // namespace fg
