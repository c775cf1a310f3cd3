#include "fg/endo.hpp"

#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace fg {

Endomorphism::Endomorphism(int alphabet_size, std::vector<Word> images)
    : alpha_(alphabet_size), images_(std::move(images)) {
  if (alpha_ < 1) throw std::invalid_argument("alphabet size must be >= 1");
  if (static_cast<int>(images_.size()) != alpha_)
    throw std::invalid_argument("need exactly one image per positive letter");
  for (const Word& w : images_)
    if (w.max_letter() > alpha_)
      throw std::invalid_argument("image uses a letter outside the alphabet");
}

Endomorphism Endomorphism::identity(int alphabet_size) {
  std::vector<Word> images;
  images.reserve(alphabet_size);
  for (int i = 1; i <= alphabet_size; ++i) images.push_back(Word::reduce({i}));
  return Endomorphism(alphabet_size, std::move(images));
}

bool Endomorphism::is_identity() const {
  for (int i = 1; i <= alpha_; ++i) {
    const auto& ls = image(i).letters();
    if (ls.size() != 1 || ls[0] != i) return false;
  }
  return true;
}

Word Endomorphism::apply(const Word& w) const {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    if (std::abs(l) > alpha_) throw std::invalid_argument("word outside the alphabet");
    const Word& img = image(std::abs(l));
    if (l > 0) {
      for (Letter x : img.letters()) {
        if (!out.empty() && out.back() == -x)
          out.pop_back();
        else
          out.push_back(x);
      }
    } else {
      const auto& ls = img.letters();
      for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
        Letter x = -*it;
        if (!out.empty() && out.back() == -x)
          out.pop_back();
        else
          out.push_back(x);
      }
    }
  }
  return Word::from_reduced(std::move(out));
}

Endomorphism Endomorphism::compose(const Endomorphism& other) const {
  if (alpha_ != other.alpha_) throw std::invalid_argument("alphabet size mismatch");
  std::vector<Word> images;
  images.reserve(alpha_);
  for (int i = 1; i <= alpha_; ++i) images.push_back(apply(other.image(i)));
  return Endomorphism(alpha_, std::move(images));
}

std::optional<Word> apply_power(const Endomorphism& phi, const Word& w, long long n,
                                std::size_t max_len) {
  if (n < 0) throw std::invalid_argument("power must be >= 0");
  Word current = w;
  std::unordered_set<Word, WordHash> seen;
  for (long long step = 1; step <= n; ++step) {
    seen.insert(current);
    current = phi.apply(current);
    if (current.size() > max_len) return std::nullopt;
    if (current == w) {
      // orbit is purely periodic with period `step`
      long long period = step;
      long long rem = n % period;
      Word result = w;
      for (long long i = 0; i < rem; ++i) result = phi.apply(result);
      return result;
    }
    if (seen.count(current)) {
      // entered a cycle that misses w; fast-forward within the cycle
      std::vector<Word> tail{current};
      Word runner = phi.apply(current);
      while (runner != current) {
        tail.push_back(runner);
        runner = phi.apply(runner);
      }
      long long cycle = static_cast<long long>(tail.size());
      return tail[((n - step) % cycle + cycle) % cycle];
    }
  }
  return current;
}

std::optional<Endomorphism> find_inverse(const Endomorphism& phi, int max_len) {
  const int A = phi.alphabet_size();
  std::vector<std::optional<Word>> preimage(A);
  int found = 0;

  // shortlex enumeration of reduced words
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= max_len && found < A; ++len) {
    std::vector<Word> next;
    for (const Word& u : frontier) {
      for (int l = 1; l <= A; ++l) {
        for (Letter sl : {static_cast<Letter>(l), static_cast<Letter>(-l)}) {
          if (!u.empty() && u.letters().back() == -sl) continue;
          std::vector<Letter> ls = u.letters();
          ls.push_back(sl);
          Word cand = Word::from_reduced(std::move(ls));
          next.push_back(cand);
          Word img = phi.apply(cand);
          if (img.size() == 1) {
            Letter target = img.letters()[0];
            int pos = std::abs(target);
            if (!preimage[pos - 1]) {
              preimage[pos - 1] = target > 0 ? cand : cand.inverse();
              ++found;
            }
          }
        }
      }
    }
    frontier = std::move(next);
  }
  if (found < A) return std::nullopt;

  std::vector<Word> images;
  images.reserve(A);
  for (auto& p : preimage) images.push_back(*p);
  Endomorphism psi(A, std::move(images));
  // two-sided check on the letters
  for (int i = 1; i <= A; ++i) {
    Word li = Word::reduce({i});
    if (phi.apply(psi.image(i)) != li || psi.apply(phi.image(i)) != li) return std::nullopt;
  }
  return psi;
}

}  // namespace fg
