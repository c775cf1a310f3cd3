#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fg/endo.hpp"
#include "fg/words.hpp"

namespace fg {

// Finite group given by its multiplication table.  Element 0 is the
// identity; the constructor verifies the group axioms over the whole table.
class FiniteGroupTable {
 public:
  explicit FiniteGroupTable(std::vector<std::vector<int>> table);
  static FiniteGroupTable cyclic(int n);

  int order() const { return m_; }
  int mul(int x, int y) const;
  int inverse(int x) const { return inv_[check(x)]; }
  int element_order(int x) const;

  bool operator==(const FiniteGroupTable& other) const { return table_ == other.table_; }

 private:
  int check(int x) const;
  int m_;
  std::vector<int> table_;  // row-major m*m
  std::vector<int> inv_;
};

// Element of the extension group: a reduced word in the free part and a
// quotient element index.
struct ExtensionElement {
  Word w;
  int q = 0;
  bool operator==(const ExtensionElement& other) const { return q == other.q && w == other.w; }
  bool operator!=(const ExtensionElement& other) const { return !(*this == other); }
};

// Unvalidated description of a free-by-finite group: the free part F on an
// alphabet, a finite quotient Q, an action of Q by automorphisms of F and a
// normalized 2-cocycle Q x Q -> F.  Empty action/cocycle mean "all trivial".
struct ExtensionSpec {
  Alphabet alphabet;
  FiniteGroupTable quotient;
  std::vector<Endomorphism> action;                         // size 0 or |Q|
  std::vector<std::vector<Word>> cocycle;                   // size 0 or |Q| x |Q|
  std::vector<std::optional<Endomorphism>> action_inverse;  // optional explicit inverses
  int inverse_search_len = 6;
};

struct ExtensionViolation {
  std::string axiom;   // which invariant failed
  std::string detail;  // offending instance (letters / quotient triple)
};

// Verifies every structural identity the multiplication needs: action of the
// identity, automorphism property of each action map, cocycle normalization,
// the cocycle condition on all quotient triples and action compatibility on
// all pairs.  Returns the first violation, or nullopt when the data defines
// a group.
std::optional<ExtensionViolation> check_extension(const ExtensionSpec& spec);

// Validated extension with multiplication, inversion and the coset
// projection.  Immutable; share via shared_ptr.
class ExtensionData {
 public:
  // Throws std::invalid_argument (with the violation text) on bad data.
  explicit ExtensionData(ExtensionSpec spec);

  static std::shared_ptr<const ExtensionData> direct_product(Alphabet a, FiniteGroupTable q);
  static std::shared_ptr<const ExtensionData> semidirect(Alphabet a, FiniteGroupTable q,
                                                         std::vector<Endomorphism> action);

  const Alphabet& alphabet() const { return spec_.alphabet; }
  const FiniteGroupTable& quotient() const { return spec_.quotient; }
  const Endomorphism& action(int q) const { return spec_.action[q]; }
  const Endomorphism& action_inverse(int q) const { return inverses_[q]; }
  const Word& cocycle(int q1, int q2) const;

  Word act(int q, const Word& w) const { return spec_.action[q].apply(w); }

  ExtensionElement identity() const { return {}; }
  bool is_identity(const ExtensionElement& x) const { return x.q == 0 && x.w.empty(); }

  // (w1, q1)(w2, q2) = (w1 . act(q1, w2) . f(q1, q2), q1 q2)
  ExtensionElement mul(const ExtensionElement& x, const ExtensionElement& y) const;
  ExtensionElement inv(const ExtensionElement& x) const;
  ExtensionElement pow(const ExtensionElement& x, long long n) const;
  int project(const ExtensionElement& x) const { return x.q; }

  ExtensionElement embed(Word w) const { return {std::move(w), 0}; }

  std::string format(const ExtensionElement& x) const;
  // "(word, q)"; plain "word" is accepted as (word, 0)
  ExtensionElement parse_element(std::string_view text) const;

  // Structural equality: same alphabet, quotient table, action and cocycle.
  bool operator==(const ExtensionData& other) const;
  bool operator!=(const ExtensionData& other) const { return !(*this == other); }

 private:
  ExtensionSpec spec_;
  std::vector<Endomorphism> inverses_;
};

// Text format:
//   alphabet a b c
//   quotient 2
//   0 1
//   1 0
//   action 1: a -> b, b -> a
//   action_inverse 1: a -> b, b -> a      (optional explicit inverse)
//   cocycle 1 1: a b                      (omitted entries are the identity)
// '#' starts a comment.  The loader runs check_extension and rejects invalid
// data with a descriptive error.
std::shared_ptr<const ExtensionData> load_extension(std::istream& in);
std::shared_ptr<const ExtensionData> load_extension_file(const std::string& path);

}  // namespace fg
