#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "fg/endo.hpp"
#include "fg/stallings.hpp"
#include "fg/vfsub.hpp"

namespace fg {

// Everything here is a bounded search: fixed and periodic subgroups are
// approximated from below by enumerating reduced words up to a length budget.

struct SearchBudget {
  int max_len = 8;
  std::size_t max_words = 5'000'000;    // enumeration cap; exceeding it throws
  std::size_t orbit_len_cap = 100'000;  // image length cap per orbit step
};

// Number of reduced words of length <= max_len (used for the budget check).
std::size_t reduced_word_count(int alphabet_size, int max_len);

struct FixedSearchResult {
  StallingsAutomaton approximation;  // subgroup generated by the fixed words found
  std::vector<Word> fixed_words;
  std::size_t words_checked = 0;
  std::size_t budget_skipped = 0;  // orbits that blew past the length cap
};

// Under-approximation of Fix(phi^power) from below: folds every reduced word
// of length <= budget.max_len fixed by phi^power.
FixedSearchResult fixed_search(const Endomorphism& phi, const Alphabet& a, long long power,
                               const SearchBudget& budget = {});

struct PeriodicEntry {
  Word word;
  int period = 0;  // least p >= 1 with phi^p(word) == word
};

struct PeriodicReport {
  int k_max = 0;
  int max_len = 0;
  std::vector<PeriodicEntry> found;
  StallingsAutomaton approximation;  // fold of all periodic words found
  std::int64_t rank = 0;
  long long r_phi_estimate = 1;  // lcm of the found periods (lower estimate)
  std::size_t budget_skipped = 0;
};

// Enumerates reduced words of length <= budget.max_len and records the least
// period <= k_max of each, if any.
PeriodicReport periodic_search(const Endomorphism& phi, const Alphabet& a, int k_max,
                               const SearchBudget& budget = {});

// Checks that every word of the bounded Fix(phi^m) approximation is fixed by
// phi^mp.  Requires m | mp.
bool check_fix_power_containment(const Endomorphism& phi, const Alphabet& a, long long m,
                                 long long mp, const SearchBudget& budget = {});

// Endomorphism of a free-by-finite group that preserves the free part:
// letters map into F, coset representatives map anywhere.  The constructor
// verifies the defining relations of the extension.
class GEndomorphism {
 public:
  GEndomorphism(std::shared_ptr<const ExtensionData> data, std::vector<Word> letter_images,
                std::vector<ExtensionElement> coset_images);

  const std::shared_ptr<const ExtensionData>& data() const { return data_; }
  // psi = phi restricted to F
  const Endomorphism& restriction() const { return restriction_; }

  ExtensionElement apply(const ExtensionElement& x) const;

 private:
  std::shared_ptr<const ExtensionData> data_;
  Endomorphism restriction_;
  std::vector<ExtensionElement> coset_images_;
};

struct GPeriodicEntry {
  ExtensionElement element;
  int period = 0;
};

struct GPeriodicReport {
  std::vector<GPeriodicEntry> found;
  SubgroupHandle approximation;
  std::int64_t rank_upper_bound = 0;
  long long r_phi_estimate = 1;
  std::size_t budget_skipped = 0;
  std::optional<std::int64_t> rank_bound_supplied;  // user-supplied cap, when any
  bool within_supplied_bound = true;
};

GPeriodicReport g_periodic_search(const GEndomorphism& phi, int k_max,
                                  const SearchBudget& budget = {},
                                  std::optional<std::int64_t> rank_bound = std::nullopt);

// File format: one line per generator, "a -> word"; for an extension, letter
// lines "a -> (word, 0)" plus coset lines "q<i> -> (word, q)".
Endomorphism load_endomorphism(const Alphabet& a, std::istream& in);
GEndomorphism load_g_endomorphism(std::shared_ptr<const ExtensionData> data, std::istream& in);

}  // namespace fg
