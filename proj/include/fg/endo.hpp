#pragma once

#include <optional>
#include <vector>

#include "fg/words.hpp"

namespace fg {

// Endomorphism of the free group on a fixed alphabet, given by the images of
// the positive letters.
class Endomorphism {
 public:
  Endomorphism(int alphabet_size, std::vector<Word> images);
  static Endomorphism identity(int alphabet_size);

  int alphabet_size() const { return alpha_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int positive_letter) const { return images_[positive_letter - 1]; }
  bool is_identity() const;

  Word apply(const Word& w) const;

  // this after other: (*this)(other(w)).
  Endomorphism compose(const Endomorphism& other) const;

  bool operator==(const Endomorphism& other) const {
    return alpha_ == other.alpha_ && images_ == other.images_;
  }

 private:
  int alpha_;
  std::vector<Word> images_;
};

// Applies phi n times with a cycle check: returns nullopt if the images blow
// past max_len letters before the answer is known.
std::optional<Word> apply_power(const Endomorphism& phi, const Word& w, long long n,
                                std::size_t max_len = 1 << 20);

// Searches for a two-sided inverse whose letter preimages have length at most
// max_len (preimages are tried in shortlex order, so the result is
// deterministic).  nullopt when none is found within the budget.
std::optional<Endomorphism> find_inverse(const Endomorphism& phi, int max_len = 6);

}  // namespace fg
