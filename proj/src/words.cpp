#include "fg/words.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace fg {

namespace {

bool valid_letter_name(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("alphabet must have at least one letter");
  for (const auto& n : names_) {
    if (!valid_letter_name(n))
      throw std::invalid_argument("invalid letter name '" + n + "' (want [a-z][a-z0-9_]*)");
  }
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw std::invalid_argument("duplicate letter name '" + names_[i] + "'");
}

Alphabet Alphabet::lowercase(int size) {
  if (size < 1 || size > 26) throw std::invalid_argument("lowercase alphabet size must be 1..26");
  std::vector<std::string> names;
  names.reserve(size);
  for (int i = 0; i < size; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  return Alphabet(std::move(names));
}

const std::string& Alphabet::name(int positive_letter) const {
  if (positive_letter < 1 || positive_letter > size())
    throw std::out_of_range("letter index out of range");
  return names_[positive_letter - 1];
}

int Alphabet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i) + 1;
  return 0;
}

Word Word::reduce(std::span<const Letter> raw) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw std::invalid_argument("0 is not a letter");
    if (!stack.empty() && stack.back() == -l)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  Word w;
  w.letters_ = std::move(stack);
  return w;
}

Word Word::reduce(std::initializer_list<Letter> raw) {
  return reduce(std::span<const Letter>(raw.begin(), raw.size()));
}

Word Word::from_reduced(std::vector<Letter> letters) {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] == 0) throw std::invalid_argument("0 is not a letter");
    if (i + 1 < letters.size() && letters[i + 1] == -letters[i])
      throw std::invalid_argument("sequence is not freely reduced");
  }
  Word w;
  w.letters_ = std::move(letters);
  return w;
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(-*it);
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::pow(long long n) const {
  const Word base = n < 0 ? inverse() : *this;
  long long k = n < 0 ? -n : n;
  Word acc;
  for (long long i = 0; i < k; ++i) acc = mul(acc, base);
  return acc;
}

int Word::max_letter() const {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, std::abs(l));
  return m;
}

bool Word::operator<(const Word& other) const {
  if (letters_.size() != other.letters_.size()) return letters_.size() < other.letters_.size();
  return letters_ < other.letters_;
}

Word mul(const Word& u, const Word& v) {
  std::vector<Letter> out = u.letters();
  for (Letter l : v.letters()) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word::from_reduced(std::move(out));
}

Word reduce_checked(std::span<const Letter> raw, const Alphabet& a) {
  for (Letter l : raw) {
    if (l == 0 || std::abs(l) > a.size())
      throw std::invalid_argument("letter index " + std::to_string(l) + " out of alphabet range");
  }
  return Word::reduce(raw);
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() const { return text[pos]; }
};

}  // namespace

namespace {

long long parse_exponent(Cursor& c) {
  if (c.pos >= c.text.size() || c.text[c.pos] != '^') return 1;
  ++c.pos;
  std::size_t expo_start = c.pos;
  bool neg = false;
  if (c.pos < c.text.size() && (c.text[c.pos] == '-' || c.text[c.pos] == '+')) {
    neg = c.text[c.pos] == '-';
    ++c.pos;
  }
  long long val = 0;
  bool any = false;
  while (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
    val = val * 10 + (c.text[c.pos] - '0');
    ++c.pos;
    any = true;
    if (val > 1'000'000) throw WordParseError("exponent too large", expo_start + 1);
  }
  if (!any) throw WordParseError("expected integer after '^'", expo_start + 1);
  return neg ? -val : val;
}

void append_power(std::vector<Letter>& raw, const std::vector<Letter>& part, long long expo) {
  if (expo >= 0) {
    for (long long i = 0; i < expo; ++i) raw.insert(raw.end(), part.begin(), part.end());
  } else {
    for (long long i = 0; i < -expo; ++i)
      for (auto it = part.rbegin(); it != part.rend(); ++it) raw.push_back(-*it);
  }
}

// items until end of input or a closing paren (consumed by the caller)
std::vector<Letter> parse_items(const Alphabet& a, Cursor& c, int depth) {
  std::vector<Letter> raw;
  while (!c.done()) {
    char ch = c.peek();
    std::size_t start = c.pos;
    if (ch == ')') {
      if (depth == 0) throw WordParseError("unmatched ')'", start + 1);
      return raw;
    }
    if (ch == '(') {
      ++c.pos;
      std::vector<Letter> sub = parse_items(a, c, depth + 1);
      if (c.done() || c.peek() != ')') throw WordParseError("expected ')'", c.pos + 1);
      ++c.pos;
      append_power(raw, sub, parse_exponent(c));
      continue;
    }
    Letter letter;
    if (ch >= 'A' && ch <= 'Z') {
      // uppercase shorthand for the inverse of a single-character name
      std::string low(1, static_cast<char>(ch - 'A' + 'a'));
      int idx = a.index_of(low);
      if (idx == 0)
        throw WordParseError("unknown letter '" + std::string(1, ch) + "'", start + 1);
      letter = static_cast<Letter>(-idx);
      ++c.pos;
    } else if (ch == '1') {
      ++c.pos;
      continue;
    } else if (ch >= 'a' && ch <= 'z') {
      std::size_t end = c.pos;
      while (end < c.text.size() &&
             ((c.text[end] >= 'a' && c.text[end] <= 'z') ||
              (c.text[end] >= '0' && c.text[end] <= '9') || c.text[end] == '_'))
        ++end;
      // longest-prefix match so that names like "a1" win over "a"
      std::string tok(c.text.substr(c.pos, end - c.pos));
      int idx = 0;
      std::size_t used = 0;
      for (std::size_t len = tok.size(); len >= 1; --len) {
        idx = a.index_of(tok.substr(0, len));
        if (idx != 0) {
          used = len;
          break;
        }
      }
      if (idx == 0)
        throw WordParseError("unknown letter '" + tok + "'", start + 1);
      letter = static_cast<Letter>(idx);
      c.pos += used;
    } else {
      throw WordParseError("unexpected character '" + std::string(1, ch) + "'", start + 1);
    }
    append_power(raw, {letter}, parse_exponent(c));
  }
  if (depth != 0) throw WordParseError("expected ')'", c.pos + 1);
  return raw;
}

}  // namespace

Word parse_word(const Alphabet& a, std::string_view text) {
  Cursor c{text};
  std::vector<Letter> raw = parse_items(a, c, 0);
  return Word::reduce(raw);
}

std::string format_word(const Alphabet& a, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) out += ' ';
    Letter l = ls[i];
    out += a.name(std::abs(l));
    if (l < 0) out += "^-1";
  }
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace fg
