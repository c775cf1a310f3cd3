#include "fg/extension.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fg/stallings.hpp"

namespace fg {

// ---------------------------------------------------------------------------
// FiniteGroupTable

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<int>> table)
    : m_(static_cast<int>(table.size())) {
  if (m_ < 1) throw std::invalid_argument("group table must have order >= 1");
  table_.reserve(static_cast<std::size_t>(m_) * m_);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != m_)
      throw std::invalid_argument("group table is not square");
    for (int x : row) {
      if (x < 0 || x >= m_) throw std::invalid_argument("group table entry out of range");
      table_.push_back(x);
    }
  }
  for (int x = 0; x < m_; ++x)
    if (mul(0, x) != x || mul(x, 0) != x)
      throw std::invalid_argument("element 0 is not an identity");
  inv_.assign(m_, -1);
  for (int x = 0; x < m_; ++x) {
    for (int y = 0; y < m_; ++y)
      if (mul(x, y) == 0 && mul(y, x) == 0) {
        inv_[x] = y;
        break;
      }
    if (inv_[x] < 0) throw std::invalid_argument("element " + std::to_string(x) + " has no inverse");
  }
  for (int x = 0; x < m_; ++x)
    for (int y = 0; y < m_; ++y)
      for (int z = 0; z < m_; ++z)
        if (mul(mul(x, y), z) != mul(x, mul(y, z)))
          throw std::invalid_argument("multiplication is not associative at (" +
                                      std::to_string(x) + "," + std::to_string(y) + "," +
                                      std::to_string(z) + ")");
}

FiniteGroupTable FiniteGroupTable::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return FiniteGroupTable(std::move(t));
}

int FiniteGroupTable::check(int x) const {
  if (x < 0 || x >= m_) throw std::out_of_range("group element out of range");
  return x;
}

int FiniteGroupTable::mul(int x, int y) const { return table_[check(x) * m_ + check(y)]; }

int FiniteGroupTable::element_order(int x) const {
  int acc = check(x), n = 1;
  while (acc != 0) {
    acc = mul(acc, x);
    ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------
// check_extension

namespace {

std::string letter_detail(const Alphabet& a, int letter) { return a.name(letter); }

}  // namespace

std::optional<ExtensionViolation> check_extension(const ExtensionSpec& spec) {
  const int m = spec.quotient.order();
  const int A = spec.alphabet.size();

  if (!spec.action.empty() && static_cast<int>(spec.action.size()) != m)
    return ExtensionViolation{"action size", "need one action map per quotient element"};
  if (!spec.cocycle.empty()) {
    if (static_cast<int>(spec.cocycle.size()) != m)
      return ExtensionViolation{"cocycle size", "need a full |Q| x |Q| table"};
    for (const auto& row : spec.cocycle)
      if (static_cast<int>(row.size()) != m)
        return ExtensionViolation{"cocycle size", "need a full |Q| x |Q| table"};
  }
  if (!spec.action_inverse.empty() && static_cast<int>(spec.action_inverse.size()) != m)
    return ExtensionViolation{"action inverse size", "need one slot per quotient element"};

  const std::vector<Endomorphism> action_maps =
      spec.action.empty() ? std::vector<Endomorphism>(m, Endomorphism::identity(A)) : spec.action;
  auto action = [&](int q) -> const Endomorphism& { return action_maps[q]; };
  auto cocycle = [&](int q1, int q2) -> Word {
    if (spec.cocycle.empty()) return Word{};
    return spec.cocycle[q1][q2];
  };

  for (int q = 0; q < m; ++q) {
    if (action(q).alphabet_size() != A)
      return ExtensionViolation{"action alphabet", "action " + std::to_string(q)};
    for (const Word& img : action(q).images())
      if (img.max_letter() > A)
        return ExtensionViolation{"action alphabet", "action " + std::to_string(q)};
  }
  for (int q1 = 0; q1 < m; ++q1)
    for (int q2 = 0; q2 < m; ++q2)
      if (cocycle(q1, q2).max_letter() > A)
        return ExtensionViolation{"cocycle alphabet",
                                  std::to_string(q1) + "," + std::to_string(q2)};

  // normalization
  if (!action(0).is_identity())
    return ExtensionViolation{"identity action", "action of the identity must fix every letter"};
  for (int q = 0; q < m; ++q) {
    if (!cocycle(0, q).empty())
      return ExtensionViolation{"cocycle normalization", "f(1," + std::to_string(q) + ") != 1"};
    if (!cocycle(q, 0).empty())
      return ExtensionViolation{"cocycle normalization", "f(" + std::to_string(q) + ",1) != 1"};
  }

  // each action map must be an automorphism: its images must generate F
  // (surjective endomorphisms of a f.g. free group are automorphisms)
  for (int q = 0; q < m; ++q) {
    StallingsAutomaton image = subgroup_automaton(spec.alphabet, action(q).images());
    auto idx = image.index();
    if (!idx || *idx != 1)
      return ExtensionViolation{"action automorphism",
                                "images of action " + std::to_string(q) + " do not generate F"};
  }

  // explicit inverses, when given, must be two-sided
  for (int q = 0; q < m && !spec.action_inverse.empty(); ++q) {
    if (!spec.action_inverse[q]) continue;
    const Endomorphism& psi = *spec.action_inverse[q];
    if (psi.alphabet_size() != A)
      return ExtensionViolation{"action inverse alphabet", "inverse " + std::to_string(q)};
    for (int i = 1; i <= A; ++i) {
      Word li = Word::reduce({i});
      if (action(q).apply(psi.image(i)) != li || psi.apply(action(q).image(i)) != li)
        return ExtensionViolation{"action inverse",
                                  "inverse of action " + std::to_string(q) +
                                      " fails on letter " + letter_detail(spec.alphabet, i)};
    }
  }

  // cocycle condition: f(q1,q2) f(q1 q2, q3) = act(q1, f(q2,q3)) f(q1, q2 q3)
  for (int q1 = 0; q1 < m; ++q1)
    for (int q2 = 0; q2 < m; ++q2)
      for (int q3 = 0; q3 < m; ++q3) {
        Word lhs = mul(cocycle(q1, q2), cocycle(spec.quotient.mul(q1, q2), q3));
        Word rhs = mul(action(q1).apply(cocycle(q2, q3)), cocycle(q1, spec.quotient.mul(q2, q3)));
        if (lhs != rhs)
          return ExtensionViolation{"cocycle condition",
                                    "(" + std::to_string(q1) + "," + std::to_string(q2) + "," +
                                        std::to_string(q3) + ")"};
      }

  // action compatibility: act(q1) . act(q2) = conj_{f(q1,q2)} . act(q1 q2)
  for (int q1 = 0; q1 < m; ++q1)
    for (int q2 = 0; q2 < m; ++q2) {
      const Word f = cocycle(q1, q2);
      for (int i = 1; i <= A; ++i) {
        Word li = Word::reduce({i});
        Word lhs = action(q1).apply(action(q2).apply(li));
        Word rhs = mul(mul(f, action(spec.quotient.mul(q1, q2)).apply(li)), f.inverse());
        if (lhs != rhs)
          return ExtensionViolation{"action compatibility",
                                    "(" + std::to_string(q1) + "," + std::to_string(q2) +
                                        ") on letter " + letter_detail(spec.alphabet, i)};
      }
    }

  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ExtensionData

ExtensionData::ExtensionData(ExtensionSpec spec) : spec_(std::move(spec)) {
  if (auto bad = check_extension(spec_))
    throw std::invalid_argument("invalid extension: " + bad->axiom + " (" + bad->detail + ")");
  const int m = spec_.quotient.order();
  if (spec_.action.empty())
    spec_.action.assign(m, Endomorphism::identity(spec_.alphabet.size()));
  if (spec_.cocycle.empty())
    spec_.cocycle.assign(m, std::vector<Word>(m));

  inverses_.reserve(m);
  for (int q = 0; q < m; ++q) {
    if (q < static_cast<int>(spec_.action_inverse.size()) && spec_.action_inverse[q]) {
      inverses_.push_back(*spec_.action_inverse[q]);
      continue;
    }
    auto psi = find_inverse(spec_.action[q], spec_.inverse_search_len);
    if (!psi)
      throw std::invalid_argument(
          "invalid extension: no inverse for action " + std::to_string(q) +
          " within the search budget; supply action_inverse explicitly");
    inverses_.push_back(std::move(*psi));
  }
}

std::shared_ptr<const ExtensionData> ExtensionData::direct_product(Alphabet a,
                                                                   FiniteGroupTable q) {
  ExtensionSpec spec{std::move(a), std::move(q), {}, {}, {}, 6};
  return std::make_shared<const ExtensionData>(std::move(spec));
}

std::shared_ptr<const ExtensionData> ExtensionData::semidirect(Alphabet a, FiniteGroupTable q,
                                                               std::vector<Endomorphism> action) {
  ExtensionSpec spec{std::move(a), std::move(q), std::move(action), {}, {}, 6};
  return std::make_shared<const ExtensionData>(std::move(spec));
}

bool ExtensionData::operator==(const ExtensionData& other) const {
  if (!(spec_.alphabet == other.spec_.alphabet) || !(spec_.quotient == other.spec_.quotient))
    return false;
  const int m = spec_.quotient.order();
  for (int q = 0; q < m; ++q)
    if (!(spec_.action[q] == other.spec_.action[q])) return false;
  for (int q1 = 0; q1 < m; ++q1)
    for (int q2 = 0; q2 < m; ++q2)
      if (spec_.cocycle[q1][q2] != other.spec_.cocycle[q1][q2]) return false;
  return true;
}

const Word& ExtensionData::cocycle(int q1, int q2) const {
  spec_.quotient.mul(q1, q2);  // range check
  return spec_.cocycle[q1][q2];
}

ExtensionElement ExtensionData::mul(const ExtensionElement& x, const ExtensionElement& y) const {
  Word w = fg::mul(fg::mul(x.w, act(x.q, y.w)), cocycle(x.q, y.q));
  return {std::move(w), spec_.quotient.mul(x.q, y.q)};
}

ExtensionElement ExtensionData::inv(const ExtensionElement& x) const {
  const int qi = spec_.quotient.inverse(x.q);
  // solve (x.w, x.q)(w', qi) = (1, 0):  act(x.q, w') = x.w^-1 f(x.q, qi)^-1
  Word target = fg::mul(cocycle(x.q, qi), x.w).inverse();
  return {action_inverse(x.q).apply(target), qi};
}

ExtensionElement ExtensionData::pow(const ExtensionElement& x, long long n) const {
  ExtensionElement base = n < 0 ? inv(x) : x;
  long long k = n < 0 ? -n : n;
  ExtensionElement acc = identity();
  for (long long i = 0; i < k; ++i) acc = mul(acc, base);
  return acc;
}

std::string ExtensionData::format(const ExtensionElement& x) const {
  return "(" + format_word(spec_.alphabet, x.w) + ", " + std::to_string(x.q) + ")";
}

ExtensionElement ExtensionData::parse_element(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  // "(word, q)" when the outer parens wrap a top-level comma followed by an
  // integer; otherwise the whole text is a word in the free part.
  if (!s.empty() && s.front() == '(' && s.back() == ')') {
    std::string_view inner = s.substr(1, s.size() - 2);
    auto comma = inner.rfind(',');
    if (comma != std::string_view::npos) {
      std::string qtext(trim(inner.substr(comma + 1)));
      std::optional<int> q;
      try {
        std::size_t used = 0;
        int value = std::stoi(qtext, &used);
        if (used == qtext.size()) q = value;
      } catch (const std::exception&) {
        // not an integer tail; fall through to plain-word parsing
      }
      if (q) {
        if (*q < 0 || *q >= spec_.quotient.order())
          throw std::invalid_argument("quotient element out of range in " + std::string(text));
        return {parse_word(spec_.alphabet, trim(inner.substr(0, comma))), *q};
      }
    }
  }
  return {parse_word(spec_.alphabet, s), 0};
}

// ---------------------------------------------------------------------------
// Loader

namespace {

std::string strip_comment(std::string line) {
  auto pos = line.find('#');
  if (pos != std::string::npos) line.erase(pos);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
    line.pop_back();
  std::size_t start = 0;
  while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
  return line.substr(start);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("extension file line " + std::to_string(line_no) + ": " + what);
}

// "action 1: a -> b, b -> a"  ->  per-letter images
Endomorphism parse_action_images(const Alphabet& a, const std::string& body, std::size_t line_no) {
  std::vector<std::optional<Word>> images(a.size());
  std::istringstream is(body);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto arrow = item.find("->");
    if (arrow == std::string::npos) fail(line_no, "expected 'letter -> word'");
    std::string lhs = strip_comment(item.substr(0, arrow));
    std::string rhs = strip_comment(item.substr(arrow + 2));
    int idx = a.index_of(lhs);
    if (idx == 0) fail(line_no, "unknown letter '" + lhs + "'");
    if (images[idx - 1]) fail(line_no, "duplicate image for letter '" + lhs + "'");
    images[idx - 1] = parse_word(a, rhs);
  }
  std::vector<Word> final_images;
  for (int i = 1; i <= a.size(); ++i)
    final_images.push_back(images[i - 1] ? *images[i - 1] : Word::reduce({i}));
  return Endomorphism(a.size(), std::move(final_images));
}

}  // namespace

std::shared_ptr<const ExtensionData> load_extension(std::istream& in) {
  std::optional<Alphabet> alphabet;
  std::optional<FiniteGroupTable> quotient;
  std::vector<std::vector<int>> table_rows;
  int table_rows_wanted = 0;
  std::vector<std::optional<Endomorphism>> action, action_inverse;
  std::vector<std::vector<std::optional<Word>>> cocycle;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;

    if (table_rows_wanted > 0) {
      auto toks = split_ws(line);
      std::vector<int> row;
      for (const auto& t : toks) row.push_back(std::stoi(t));
      table_rows.push_back(std::move(row));
      if (--table_rows_wanted == 0) quotient = FiniteGroupTable(std::move(table_rows));
      continue;
    }

    auto colon = line.find(':');
    auto toks = split_ws(colon == std::string::npos ? line : line.substr(0, colon));
    if (toks.empty()) continue;
    const std::string& key = toks[0];

    if (key == "alphabet") {
      alphabet = Alphabet(std::vector<std::string>(toks.begin() + 1, toks.end()));
    } else if (key == "quotient") {
      if (toks.size() != 2) fail(line_no, "expected 'quotient <order>'");
      table_rows_wanted = std::stoi(toks[1]);
      if (table_rows_wanted < 1) fail(line_no, "quotient order must be >= 1");
      table_rows.clear();
    } else if (key == "action" || key == "action_inverse") {
      if (!alphabet || !quotient) fail(line_no, "alphabet and quotient must come first");
      if (toks.size() != 2 || colon == std::string::npos)
        fail(line_no, "expected '" + key + " <q>: letter -> word, ...'");
      int q = std::stoi(toks[1]);
      if (q < 0 || q >= quotient->order()) fail(line_no, "quotient element out of range");
      auto& slot = key == "action" ? action : action_inverse;
      slot.resize(quotient->order());
      if (slot[q]) fail(line_no, "duplicate " + key + " for element " + std::to_string(q));
      slot[q] = parse_action_images(*alphabet, line.substr(colon + 1), line_no);
    } else if (key == "cocycle") {
      if (!alphabet || !quotient) fail(line_no, "alphabet and quotient must come first");
      if (toks.size() != 3 || colon == std::string::npos)
        fail(line_no, "expected 'cocycle <q1> <q2>: word'");
      int q1 = std::stoi(toks[1]), q2 = std::stoi(toks[2]);
      if (q1 < 0 || q1 >= quotient->order() || q2 < 0 || q2 >= quotient->order())
        fail(line_no, "quotient element out of range");
      cocycle.resize(quotient->order());
      for (auto& row : cocycle) row.resize(quotient->order());
      if (cocycle[q1][q2]) fail(line_no, "duplicate cocycle entry");
      cocycle[q1][q2] = parse_word(*alphabet, line.substr(colon + 1));
    } else {
      fail(line_no, "unknown directive '" + key + "'");
    }
  }
  if (!alphabet) throw std::runtime_error("extension file: missing alphabet");
  if (!quotient) throw std::runtime_error("extension file: missing quotient");

  ExtensionSpec spec{*alphabet, *quotient, {}, {}, {}, 6};
  if (!action.empty()) {
    for (int q = 0; q < quotient->order(); ++q)
      spec.action.push_back(action.size() > static_cast<std::size_t>(q) && action[q]
                                ? *action[q]
                                : Endomorphism::identity(alphabet->size()));
  }
  if (!action_inverse.empty()) {
    spec.action_inverse.resize(quotient->order());
    for (int q = 0; q < quotient->order(); ++q)
      if (action_inverse.size() > static_cast<std::size_t>(q) && action_inverse[q])
        spec.action_inverse[q] = *action_inverse[q];
  }
  if (!cocycle.empty()) {
    spec.cocycle.assign(quotient->order(), std::vector<Word>(quotient->order()));
    for (int q1 = 0; q1 < quotient->order(); ++q1)
      for (int q2 = 0; q2 < quotient->order(); ++q2)
        if (cocycle[q1][q2]) spec.cocycle[q1][q2] = *cocycle[q1][q2];
  }
  return std::make_shared<const ExtensionData>(std::move(spec));
}

std::shared_ptr<const ExtensionData> load_extension_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open extension file " + path);
  return load_extension(in);
}

}  // namespace fg
