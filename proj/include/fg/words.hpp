#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fg {

// Signed letter index: +i is the i-th positive letter (1-based), -i its
// inverse.  0 is never a valid letter.
using Letter = std::int32_t;

// Finite symmetric alphabet.  Only positive letters are named; inverses are
// rendered with a "^-1" suffix.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names);

  // a, b, c, ... (size <= 26)
  static Alphabet lowercase(int size);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int positive_letter) const;  // 1-based
  // 1-based index, or 0 if the name is unknown.
  int index_of(std::string_view name) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> names_;
};

// A freely reduced word over a symmetric alphabet; the empty word is the
// identity.  Words are plain letter sequences: they do not remember which
// alphabet they belong to, range checks happen at I/O and automaton
// boundaries.
class Word {
 public:
  Word() = default;

  // Reduces an arbitrary letter sequence.  Letters must be nonzero.
  static Word reduce(std::span<const Letter> raw);
  static Word reduce(std::initializer_list<Letter> raw);

  // Wraps a sequence that is already known to be reduced (checked).
  static Word from_reduced(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word pow(long long n) const;

  // Largest absolute letter index appearing (0 for the identity).
  int max_letter() const;

  bool operator==(const Word& other) const { return letters_ == other.letters_; }
  bool operator!=(const Word& other) const { return !(*this == other); }
  // Shortlex over (length, letter sequence); used only for deterministic
  // ordering of outputs.
  bool operator<(const Word& other) const;

 private:
  std::vector<Letter> letters_;
};

// Freely reduced product.
Word mul(const Word& u, const Word& v);

// Fails with std::invalid_argument if a letter is out of range for `a`.
Word reduce_checked(std::span<const Letter> raw, const Alphabet& a);

// Parses the textual word syntax: letter names separated by optional
// whitespace, inverse as "^-1", integer powers as "^k".  A single uppercase
// letter is accepted as the inverse of its lowercase name.  "" and "1" denote
// the identity.  Throws WordParseError with a column number on bad input.
Word parse_word(const Alphabet& a, std::string_view text);

std::string format_word(const Alphabet& a, const Word& w);

struct WordParseError : std::invalid_argument {
  WordParseError(const std::string& what, std::size_t column)
      : std::invalid_argument(what), column(column) {}
  std::size_t column;  // 1-based
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace fg
