#include "fg/dynamics.hpp"

#include <cctype>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace fg {

namespace {

// Visits all nonempty reduced words of length <= max_len in shortlex order.
template <typename F>
void for_each_reduced_word(int alphabet_size, int max_len, F&& visit) {
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& u : frontier) {
      for (int l = 1; l <= alphabet_size; ++l) {
        for (Letter sl : {static_cast<Letter>(l), static_cast<Letter>(-l)}) {
          if (!u.empty() && u.letters().back() == -sl) continue;
          std::vector<Letter> ls = u.letters();
          ls.push_back(sl);
          Word w = Word::from_reduced(std::move(ls));
          visit(w);
          next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
  }
}

enum class OrbitAnswer { kFixed, kNotFixed, kBudget };

// Is phi^power(w) == w?  Walks the orbit with cycle detection, so huge powers
// terminate as soon as the orbit repeats or outgrows the cap.
OrbitAnswer orbit_fixed(const Endomorphism& phi, const Word& w, long long power,
                        std::size_t len_cap) {
  Word current = w;
  std::unordered_set<Word, WordHash> seen;
  for (long long step = 1; step <= power; ++step) {
    seen.insert(current);
    current = phi.apply(current);
    if (current.size() > len_cap) return OrbitAnswer::kBudget;
    if (current == w) {
      // first return: the orbit is purely periodic with minimal period `step`
      return power % step == 0 ? OrbitAnswer::kFixed : OrbitAnswer::kNotFixed;
    }
    if (seen.count(current)) return OrbitAnswer::kNotFixed;  // cycle missing w
  }
  return current == w ? OrbitAnswer::kFixed : OrbitAnswer::kNotFixed;
}

// phi^n by binary powering; nullopt once the combined image length outgrows
// the cap (expanding maps), in which case callers fall back to per-word
// orbits.
std::optional<Endomorphism> compose_power(const Endomorphism& phi, long long n,
                                          std::size_t len_cap) {
  auto total_len = [](const Endomorphism& e) {
    std::size_t t = 0;
    for (const Word& w : e.images()) t += w.size();
    return t;
  };
  Endomorphism acc = Endomorphism::identity(phi.alphabet_size());
  Endomorphism base = phi;
  while (n > 0) {
    if (n & 1) {
      acc = acc.compose(base);
      if (total_len(acc) > len_cap) return std::nullopt;
    }
    n >>= 1;
    if (n == 0) break;
    base = base.compose(base);
    if (total_len(base) > len_cap) return std::nullopt;
  }
  return acc;
}

}  // namespace

std::size_t reduced_word_count(int alphabet_size, int max_len) {
  const std::size_t k = 2 * static_cast<std::size_t>(alphabet_size);
  std::size_t total = 0, level = 1;
  for (int len = 1; len <= max_len; ++len) {
    level *= (len == 1) ? k : (k - 1);
    total += level;
    if (total > (std::size_t{1} << 62)) return total;  // saturate
  }
  return total;
}

FixedSearchResult fixed_search(const Endomorphism& phi, const Alphabet& a, long long power,
                               const SearchBudget& budget) {
  if (power < 1) throw std::invalid_argument("power must be >= 1");
  if (phi.alphabet_size() != a.size())
    throw std::invalid_argument("endomorphism/alphabet size mismatch");
  if (reduced_word_count(a.size(), budget.max_len) > budget.max_words)
    throw std::invalid_argument("word enumeration budget exceeded");

  // One composed application per word when the power composes within budget;
  // per-word orbit walking otherwise.
  std::optional<Endomorphism> composed = compose_power(phi, power, budget.orbit_len_cap);

  FixedSearchResult out{StallingsAutomaton::trivial(a), {}, 0, 0};
  for_each_reduced_word(a.size(), budget.max_len, [&](const Word& w) {
    ++out.words_checked;
    OrbitAnswer answer;
    if (composed)
      answer = composed->apply(w) == w ? OrbitAnswer::kFixed : OrbitAnswer::kNotFixed;
    else
      answer = orbit_fixed(phi, w, power, budget.orbit_len_cap);
    switch (answer) {
      case OrbitAnswer::kFixed:
        out.fixed_words.push_back(w);
        break;
      case OrbitAnswer::kBudget:
        ++out.budget_skipped;
        break;
      case OrbitAnswer::kNotFixed:
        break;
    }
  });
  out.approximation = subgroup_automaton(a, out.fixed_words);
  return out;
}

PeriodicReport periodic_search(const Endomorphism& phi, const Alphabet& a, int k_max,
                               const SearchBudget& budget) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (phi.alphabet_size() != a.size())
    throw std::invalid_argument("endomorphism/alphabet size mismatch");
  if (reduced_word_count(a.size(), budget.max_len) > budget.max_words)
    throw std::invalid_argument("word enumeration budget exceeded");

  PeriodicReport report{k_max, budget.max_len, {}, StallingsAutomaton::trivial(a), 0, 1, 0};

  std::vector<Word> periodic_words;
  for_each_reduced_word(a.size(), budget.max_len, [&](const Word& w) {
    Word current = w;
    for (int p = 1; p <= k_max; ++p) {
      current = phi.apply(current);
      if (current.size() > budget.orbit_len_cap) {
        ++report.budget_skipped;
        return;
      }
      if (current == w) {
        report.found.push_back(PeriodicEntry{w, p});
        periodic_words.push_back(w);
        return;
      }
    }
  });

  report.approximation = subgroup_automaton(a, periodic_words);
  report.rank = report.approximation.rank();
  long long lcm = 1;
  for (const auto& e : report.found) lcm = std::lcm(lcm, static_cast<long long>(e.period));
  report.r_phi_estimate = lcm;
  return report;
}

bool check_fix_power_containment(const Endomorphism& phi, const Alphabet& a, long long m,
                                 long long mp, const SearchBudget& budget) {
  if (m < 1 || mp < 1 || mp % m != 0)
    throw std::invalid_argument("need m | m' with both >= 1");
  FixedSearchResult fix_m = fixed_search(phi, a, m, budget);
  std::optional<Endomorphism> composed = compose_power(phi, mp, budget.orbit_len_cap);
  for (const Word& w : fix_m.fixed_words) {
    OrbitAnswer answer;
    if (composed)
      answer = composed->apply(w) == w ? OrbitAnswer::kFixed : OrbitAnswer::kNotFixed;
    else
      answer = orbit_fixed(phi, w, mp, budget.orbit_len_cap);
    if (answer != OrbitAnswer::kFixed) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Extension endomorphisms

GEndomorphism::GEndomorphism(std::shared_ptr<const ExtensionData> data,
                             std::vector<Word> letter_images,
                             std::vector<ExtensionElement> coset_images)
    : data_(std::move(data)),
      restriction_(data_ ? data_->alphabet().size() : 1, std::move(letter_images)),
      coset_images_(std::move(coset_images)) {
  if (!data_) throw std::invalid_argument("null extension data");
  const ExtensionData& G = *data_;
  const int m = G.quotient().order();
  if (static_cast<int>(coset_images_.size()) != m)
    throw std::invalid_argument("need one coset image per quotient element");
  if (!G.is_identity(coset_images_[0]))
    throw std::invalid_argument("the identity coset must map to the identity");

  // Defining relations: (1,q1)(1,q2) = (f(q1,q2), q1 q2) and
  // (1,q)(a,0)(1,q)^-1 = (act(q, a), 0).
  for (int q1 = 0; q1 < m; ++q1)
    for (int q2 = 0; q2 < m; ++q2) {
      ExtensionElement lhs = G.mul(coset_images_[q1], coset_images_[q2]);
      ExtensionElement rhs = G.mul(G.embed(restriction_.apply(G.cocycle(q1, q2))),
                                   coset_images_[G.quotient().mul(q1, q2)]);
      if (lhs != rhs)
        throw std::invalid_argument("coset images break the cocycle relation at (" +
                                    std::to_string(q1) + "," + std::to_string(q2) + ")");
    }
  for (int q = 0; q < m; ++q)
    for (int i = 1; i <= G.alphabet().size(); ++i) {
      Word li = Word::reduce({i});
      ExtensionElement lhs = G.mul(coset_images_[q], G.embed(restriction_.apply(li)));
      ExtensionElement rhs = G.mul(G.embed(restriction_.apply(G.act(q, li))), coset_images_[q]);
      if (lhs != rhs)
        throw std::invalid_argument("coset images break the action relation at q=" +
                                    std::to_string(q) + ", letter " + G.alphabet().name(i));
    }
}

ExtensionElement GEndomorphism::apply(const ExtensionElement& x) const {
  return data_->mul(data_->embed(restriction_.apply(x.w)), coset_images_[x.q]);
}

GPeriodicReport g_periodic_search(const GEndomorphism& phi, int k_max, const SearchBudget& budget,
                                  std::optional<std::int64_t> rank_bound) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const ExtensionData& G = *phi.data();
  if (reduced_word_count(G.alphabet().size(), budget.max_len) > budget.max_words)
    throw std::invalid_argument("word enumeration budget exceeded");

  std::vector<GPeriodicEntry> found;
  std::size_t skipped = 0;
  auto probe = [&](const ExtensionElement& x) {
    ExtensionElement current = x;
    for (int p = 1; p <= k_max; ++p) {
      current = phi.apply(current);
      if (current.w.size() > budget.orbit_len_cap) {
        ++skipped;
        return;
      }
      if (current == x) {
        found.push_back(GPeriodicEntry{x, p});
        return;
      }
    }
  };
  for (int q = 0; q < G.quotient().order(); ++q) {
    if (q != 0) probe(ExtensionElement{Word{}, q});
  }
  for_each_reduced_word(G.alphabet().size(), budget.max_len, [&](const Word& w) {
    for (int q = 0; q < G.quotient().order(); ++q) probe(ExtensionElement{w, q});
  });

  std::vector<ExtensionElement> gens;
  gens.reserve(found.size());
  for (const auto& e : found) gens.push_back(e.element);
  GPeriodicReport report{std::move(found),
                         close_subgroup(phi.data(), std::move(gens)),
                         0,
                         1,
                         skipped,
                         rank_bound,
                         true};
  report.rank_upper_bound = report.approximation.rank_upper_bound();
  long long lcm = 1;
  for (const auto& e : report.found) lcm = std::lcm(lcm, static_cast<long long>(e.period));
  report.r_phi_estimate = lcm;
  if (rank_bound) report.within_supplied_bound = report.rank_upper_bound <= *rank_bound;
  return report;
}

// ---------------------------------------------------------------------------
// File formats

namespace {

std::string strip(std::string line) {
  auto pos = line.find('#');
  if (pos != std::string::npos) line.erase(pos);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
    line.pop_back();
  std::size_t start = 0;
  while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
  return line.substr(start);
}

}  // namespace

Endomorphism load_endomorphism(const Alphabet& a, std::istream& in) {
  std::vector<std::optional<Word>> images(a.size());
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty()) continue;
    auto arrow = line.find("->");
    if (arrow == std::string::npos)
      throw std::runtime_error("endomorphism file line " + std::to_string(line_no) +
                               ": expected 'letter -> word'");
    std::string lhs = strip(line.substr(0, arrow));
    int idx = a.index_of(lhs);
    if (idx == 0)
      throw std::runtime_error("endomorphism file line " + std::to_string(line_no) +
                               ": unknown letter '" + lhs + "'");
    images[idx - 1] = parse_word(a, strip(line.substr(arrow + 2)));
  }
  std::vector<Word> final_images;
  for (int i = 1; i <= a.size(); ++i)
    final_images.push_back(images[i - 1] ? *images[i - 1] : Word::reduce({i}));
  return Endomorphism(a.size(), std::move(final_images));
}

GEndomorphism load_g_endomorphism(std::shared_ptr<const ExtensionData> data, std::istream& in) {
  const ExtensionData& G = *data;
  const Alphabet& a = G.alphabet();
  std::vector<std::optional<Word>> letter_images(a.size());
  std::vector<ExtensionElement> coset_images(G.quotient().order());
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty()) continue;
    auto arrow = line.find("->");
    if (arrow == std::string::npos)
      throw std::runtime_error("endomorphism file line " + std::to_string(line_no) +
                               ": expected 'generator -> element'");
    std::string lhs = strip(line.substr(0, arrow));
    std::string rhs = strip(line.substr(arrow + 2));
    if (lhs.size() > 1 && lhs[0] == 'q' && std::isdigit(static_cast<unsigned char>(lhs[1]))) {
      int q = std::stoi(lhs.substr(1));
      if (q < 0 || q >= G.quotient().order())
        throw std::runtime_error("endomorphism file line " + std::to_string(line_no) +
                                 ": quotient element out of range");
      coset_images[q] = G.parse_element(rhs);
    } else {
      int idx = a.index_of(lhs);
      if (idx == 0)
        throw std::runtime_error("endomorphism file line " + std::to_string(line_no) +
                                 ": unknown generator '" + lhs + "'");
      ExtensionElement img = G.parse_element(rhs);
      if (img.q != 0)
        throw std::runtime_error("endomorphism file line " + std::to_string(line_no) +
                                 ": letter images must lie in the free part");
      letter_images[idx - 1] = img.w;
    }
  }
  std::vector<Word> final_images;
  for (int i = 1; i <= a.size(); ++i)
    final_images.push_back(letter_images[i - 1] ? *letter_images[i - 1] : Word::reduce({i}));
  return GEndomorphism(std::move(data), std::move(final_images), std::move(coset_images));
}

}  // namespace fg
