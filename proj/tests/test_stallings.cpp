#include <doctest.h>

#include <random>
#include <sstream>

#include "fg/stallings.hpp"
#include "oracles.hpp"

using namespace fg;
using fg::testing::all_reduced_words;
using fg::testing::enumerate_subgroup;
using fg::testing::oracle_member;

namespace {

std::vector<Word> parse_all(const Alphabet& a, std::initializer_list<const char*> texts) {
  std::vector<Word> out;
  for (const char* t : texts) out.push_back(parse_word(a, t));
  return out;
}

Word rand_word(std::mt19937_64& rng, int alpha, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> first(0, 2 * alpha - 1);
  std::uniform_int_distribution<int> rest(0, 2 * alpha - 2);
  int n = len(rng);
  std::vector<Letter> out;
  for (int i = 0; i < n; ++i) {
    int code = out.empty() ? first(rng) : rest(rng);
    Letter l = static_cast<Letter>(code / 2 + 1);
    if (code % 2) l = -l;
    if (!out.empty() && l == -out.back()) l = static_cast<Letter>(out.back());
    out.push_back(l);
  }
  return Word::from_reduced(std::move(out));
}

std::vector<Word> rand_gens(std::mt19937_64& rng, int alpha, int count_max, int len_max) {
  std::uniform_int_distribution<int> count(1, count_max);
  std::vector<Word> gens;
  int k = count(rng);
  for (int i = 0; i < k; ++i) gens.push_back(rand_word(rng, alpha, len_max));
  return gens;
}

// Verifies a positive membership by rebuilding the word from the basis
// expression with plain word arithmetic.
bool certified_member(const StallingsAutomaton& aut, const Word& w) {
  auto expr = aut.express_in_basis(w);
  if (!expr) return false;
  std::vector<Word> basis = aut.basis();
  Word product;
  for (int idx : *expr) {
    const Word& b = basis[std::abs(idx) - 1];
    product = mul(product, idx > 0 ? b : b.inverse());
  }
  return product == w;
}

}  // namespace

TEST_CASE("flower shapes") {
  Alphabet f3 = Alphabet::lowercase(3);
  Alphabet f5 = Alphabet::lowercase(5);

  GraphBuilder empty = GraphBuilder::flower(f3, std::vector<Word>{});
  CHECK(empty.vertex_count() == 1);
  CHECK(empty.edge_count() == 0);

  GraphBuilder single = GraphBuilder::flower(f3, parse_all(f3, {"a"}));
  CHECK(single.vertex_count() == 1);
  CHECK(single.edge_count() == 1);

  // four length-3 petals
  GraphBuilder petals =
      GraphBuilder::flower(f5, parse_all(f5, {"a c b^-1", "a c^-1 b^-1", "a d b^-1", "a d^-1 b^-1"}));
  CHECK(petals.vertex_count() == 9);
  CHECK(petals.edge_count() == 12);

  // trivial generators are skipped
  GraphBuilder skipped = GraphBuilder::flower(f3, parse_all(f3, {"", "a a^-1", "b"}));
  CHECK(skipped.edge_count() == 1);
}

TEST_CASE("folding") {
  Alphabet f2 = Alphabet::lowercase(2);
  Alphabet f3 = Alphabet::lowercase(3);
  Alphabet f5 = Alphabet::lowercase(5);

  StallingsAutomaton dup = subgroup_automaton(f2, {"a", "a"});
  CHECK(dup.vertex_count() == 1);
  CHECK(dup.edge_count() == 1);
  CHECK(dup == subgroup_automaton(f2, {"a"}));

  StallingsAutomaton h1 =
      subgroup_automaton(f5, {"a c b^-1", "a c^-1 b^-1", "a d b^-1", "a d^-1 b^-1"});
  CHECK(h1.vertex_count() == 3);
  CHECK(h1.edge_count() == 6);
  CHECK(h1.rank() == 4);

  // both a-petals share their first edge, the rest folds into a line
  StallingsAutomaton g = subgroup_automaton(f3, {"a b", "a c"});
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 3);
  CHECK(g.rank() == 2);
  auto oracle = enumerate_subgroup(parse_all(f3, {"a b", "a c"}), 6);
  for (const Word& w : all_reduced_words(3, 5)) CHECK(g.member(w) == oracle.contains(w));
}

TEST_CASE("membership") {
  Alphabet f3 = Alphabet::lowercase(3);
  StallingsAutomaton h = subgroup_automaton(f3, {"a", "b c"});

  CHECK(h.member(Word{}));  // identity is in every subgroup
  CHECK(h.member(parse_word(f3, "a b c")));
  CHECK_FALSE(h.member(parse_word(f3, "b a")));
  CHECK_FALSE(h.member(parse_word(f3, "b")));
  CHECK(subgroup_automaton(f3, {"a b", "c"}).member(parse_word(f3, "a b c")));

  CHECK_THROWS_AS(h.member(Word::reduce({4})), std::invalid_argument);

  auto oracle = enumerate_subgroup(parse_all(f3, {"a", "b c"}), 6);
  for (const Word& w : all_reduced_words(3, 5)) CHECK(h.member(w) == oracle.contains(w));
}

TEST_CASE("membership agrees with product enumeration on random subgroups") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Word> gens = rand_gens(rng, 2, 3, 6);
    StallingsAutomaton aut = subgroup_automaton(Alphabet::lowercase(2), gens);
    auto oracle = enumerate_subgroup(gens, 6);
    // every enumerated product is accepted
    int checked = 0;
    for (const Word& w : oracle.elems) {
      if (w.size() > 10) continue;
      CHECK(aut.member(w));
      if (++checked > 400) break;
    }
    // every accepted short word carries a verifiable basis expression
    for (const Word& w : all_reduced_words(2, 8)) {
      if (aut.member(w)) {
        CHECK(certified_member(aut, w));
      } else {
        CHECK_FALSE(oracle.contains(w));
      }
    }
  }
}

TEST_CASE("rank") {
  Alphabet f5 = Alphabet::lowercase(5);
  CHECK(StallingsAutomaton::trivial(f5).rank() == 0);
  CHECK(subgroup_automaton(f5, {"a c b^-1", "a c^-1 b^-1", "a d b^-1", "a d^-1 b^-1"}).rank() == 4);
  CHECK(subgroup_automaton(Alphabet::lowercase(2), {"a", "b"}).rank() == 2);
}

TEST_CASE("basis") {
  Alphabet f3 = Alphabet::lowercase(3);

  auto single = subgroup_automaton(f3, {"a"});
  REQUIRE(single.basis().size() == 1);
  CHECK(single.basis()[0] == parse_word(f3, "a"));

  CHECK(StallingsAutomaton::trivial(f3).basis().empty());

  auto h = subgroup_automaton(f3, {"a", "b c"});
  auto basis = h.basis();
  REQUIRE(basis.size() == 2);
  // ordered by (source vertex, letter) in the canonical numbering
  CHECK(basis[0] == parse_word(f3, "a"));
  CHECK(basis[1] == parse_word(f3, "b c"));
  for (const Word& b : basis) CHECK(h.member(b));
  StallingsAutomaton refolded = subgroup_automaton(f3, basis);
  CHECK(refolded == h);
  CHECK(certified_member(refolded, parse_word(f3, "a")));
  CHECK(certified_member(refolded, parse_word(f3, "b c")));
}

TEST_CASE("basis size equals rank and refolds to the same subgroup") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Word> gens = rand_gens(rng, 2, 4, 7);
    StallingsAutomaton aut = subgroup_automaton(Alphabet::lowercase(2), gens);
    auto basis = aut.basis();
    CHECK(static_cast<std::int64_t>(basis.size()) == aut.rank());
    CHECK(subgroup_automaton(Alphabet::lowercase(2), basis) == aut);
  }
}

TEST_CASE("index") {
  Alphabet f2 = Alphabet::lowercase(2);
  Alphabet f3 = Alphabet::lowercase(3);

  auto whole = subgroup_automaton(f2, {"a", "b"});
  CHECK(whole.index() == 1);

  auto k = subgroup_automaton(f2, {"a^2", "b", "a b a"});
  REQUIRE(k.index().has_value());
  CHECK(*k.index() == 2);
  CHECK(k.rank() == 2 * (2 - 1) + 1);
  // brute-force coset count: equivalence classes of short words under
  // w ~ v iff w v^-1 in the subgroup (oracle products only)
  {
    auto oracle = enumerate_subgroup(parse_all(f2, {"a^2", "b", "a b a"}), 8);
    std::vector<Word> reps;
    for (const Word& w : all_reduced_words(2, 2)) {
      bool fresh = true;
      for (const Word& r : reps)
        if (oracle.contains(mul(w, r.inverse()))) fresh = false;
      if (fresh) reps.push_back(w);
    }
    CHECK(reps.size() == 2);
  }

  CHECK_FALSE(subgroup_automaton(f3, {"a", "b c"}).index().has_value());
}

TEST_CASE("finite index forces the rank formula") {
  std::mt19937_64 rng(37);
  int finite_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> gens = rand_gens(rng, 2, 6, 5);
    StallingsAutomaton aut = subgroup_automaton(Alphabet::lowercase(2), gens);
    if (auto idx = aut.index()) {
      ++finite_seen;
      CHECK(aut.rank() == *idx * (2 - 1) + 1);
    }
  }
  CHECK(finite_seen > 0);
}

TEST_CASE("intersection") {
  Alphabet f3 = Alphabet::lowercase(3);
  auto h1 = subgroup_automaton(f3, {"a", "b c"});
  auto h2 = subgroup_automaton(f3, {"a b", "c"});

  auto meet = intersect(h1, h2);
  CHECK(meet.rank() == 1);
  CHECK(meet.vertex_count() == 3);
  CHECK(meet.edge_count() == 3);
  REQUIRE(meet.basis().size() == 1);
  Word b = meet.basis()[0];
  Word abc = parse_word(f3, "a b c");
  CHECK((b == abc || b == abc.inverse()));
  CHECK(meet == subgroup_automaton(f3, {"a b c"}));

  CHECK(intersect(h1, h1) == h1);

  auto a_only = subgroup_automaton(f3, {"a"});
  auto b_only = subgroup_automaton(f3, {"b"});
  CHECK(intersect(a_only, b_only).rank() == 0);
  CHECK(intersect(a_only, b_only).vertex_count() == 1);

  CHECK_THROWS_AS(intersect(a_only, subgroup_automaton(Alphabet::lowercase(2), {"a"})),
                  std::invalid_argument);
}

TEST_CASE("intersection recognizes exactly the common members") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    auto g1 = rand_gens(rng, 2, 3, 6);
    auto g2 = rand_gens(rng, 2, 3, 6);
    Alphabet f2 = Alphabet::lowercase(2);
    auto h1 = subgroup_automaton(f2, g1);
    auto h2 = subgroup_automaton(f2, g2);
    auto meet = intersect(h1, h2);
    for (const Word& w : all_reduced_words(2, 7))
      CHECK(meet.member(w) == (h1.member(w) && h2.member(w)));
    // intersection rank bound for nontrivial subgroups
    if (h1.rank() >= 1 && h2.rank() >= 1)
      CHECK(meet.rank() <= (h1.rank() - 1) * (h2.rank() - 1) + 1);
  }
}

TEST_CASE("coset automata") {
  Alphabet f3 = Alphabet::lowercase(3);
  auto k = subgroup_automaton(f3, {"a"});

  CosetAutomaton trivial_coset(k, Word{});
  CHECK(trivial_coset.accept() == trivial_coset.base());
  CHECK(trivial_coset.tail_length() == 0);

  CosetAutomaton loop(k, parse_word(f3, "a^3"));
  CHECK(loop.accept() == loop.base());  // representative already in K

  auto h = subgroup_automaton(f3, {"a", "b c"});
  CosetAutomaton hc(h, parse_word(f3, "c"));
  CHECK(hc.tail_length() == 1);
  CHECK(hc.member(parse_word(f3, "c")));
  CHECK(hc.member(parse_word(f3, "a c")));
  CHECK_FALSE(hc.member(parse_word(f3, "b")));

  // membership in K x agrees with w x^-1 in K, by product enumeration
  auto oracle = enumerate_subgroup(parse_all(f3, {"a", "b c"}), 6);
  Word x = parse_word(f3, "c");
  for (const Word& w : all_reduced_words(3, 4))
    CHECK(hc.member(w) == oracle.contains(mul(w, x.inverse())));
}

TEST_CASE("coset intersection") {
  Alphabet f2 = Alphabet::lowercase(2);
  auto ka = subgroup_automaton(f2, {"a"});
  auto kb = subgroup_automaton(f2, {"b"});

  auto same = coset_intersect(CosetAutomaton(ka, Word{}), CosetAutomaton(ka, Word{}));
  REQUIRE(same.has_value());
  CHECK(*same == Word{});

  auto b = coset_intersect(CosetAutomaton(ka, parse_word(f2, "b")),
                           CosetAutomaton(kb, parse_word(f2, "b")));
  REQUIRE(b.has_value());
  CHECK(*b == parse_word(f2, "b"));

  auto empty = coset_intersect(CosetAutomaton(ka, Word{}), CosetAutomaton(kb, parse_word(f2, "a b")));
  CHECK_FALSE(empty.has_value());

  // ties between equally short representatives break in letter order: the
  // coset <a b^-1> b contains both a and b
  auto whole = subgroup_automaton(f2, {"a", "b"});
  auto tie = coset_intersect(CosetAutomaton(subgroup_automaton(f2, {"a b^-1"}), parse_word(f2, "b")),
                             CosetAutomaton(whole, Word{}));
  REQUIRE(tie.has_value());
  CHECK(*tie == parse_word(f2, "a"));
}

TEST_CASE("coset intersection agrees with bounded enumeration") {
  std::mt19937_64 rng(47);
  Alphabet f2 = Alphabet::lowercase(2);
  for (int trial = 0; trial < 60; ++trial) {
    auto g1 = rand_gens(rng, 2, 2, 5);
    auto g2 = rand_gens(rng, 2, 2, 5);
    Word x1 = rand_word(rng, 2, 4);
    Word x2 = rand_word(rng, 2, 4);
    CosetAutomaton c1(subgroup_automaton(f2, g1), x1);
    CosetAutomaton c2(subgroup_automaton(f2, g2), x2);
    auto rep = coset_intersect(c1, c2);

    // enumerate K1 x1 and test against c2
    auto k1 = enumerate_subgroup(g1, 5);
    std::optional<Word> witness;
    for (const Word& u : k1.elems) {
      Word w = mul(u, x1);
      if (c2.member(w) && (!witness || w.size() < witness->size())) witness = w;
    }
    if (witness) {
      REQUIRE(rep.has_value());
      CHECK(rep->size() <= witness->size());
      CHECK(c1.member(*rep));
      CHECK(c2.member(*rep));
    }
    if (rep) {
      CHECK(c1.member(*rep));
      CHECK(c2.member(*rep));
    }
  }
}

TEST_CASE("product-set membership by saturation") {
  Alphabet f2 = Alphabet::lowercase(2);
  Alphabet f3 = Alphabet::lowercase(3);
  auto ka = subgroup_automaton(f2, {"a"});
  auto kb = subgroup_automaton(f2, {"b"});

  std::vector<StallingsAutomaton> ab{ka, kb};
  CHECK_FALSE(benois_member(std::span<const StallingsAutomaton>(ab), parse_word(f2, "a b a")));
  CHECK(benois_member(std::span<const StallingsAutomaton>(ab), parse_word(f2, "a^2 b^-3")));
  CHECK(benois_member(std::span<const StallingsAutomaton>(ab), Word{}));

  // the free-part witness behind the worked extension example:
  // b^-1 a^-1 lies in K1 K2 for K1 = <b c a^-1, a^2, a b c>,
  // K2 = <c, a b a b, a b c b^-1 a^-1>
  auto k1 = subgroup_automaton(f3, {"b c a^-1", "a^2", "a b c"});
  auto k2 = subgroup_automaton(f3, {"c", "a b a b", "a b c b^-1 a^-1"});
  std::vector<StallingsAutomaton> k1k2{k1, k2};
  CHECK(benois_member(std::span<const StallingsAutomaton>(k1k2), parse_word(f3, "b^-1 a^-1")));
}

TEST_CASE("saturation membership agrees with member and the coset route") {
  std::mt19937_64 rng(53);
  Alphabet f2 = Alphabet::lowercase(2);
  for (int trial = 0; trial < 40; ++trial) {
    auto g1 = rand_gens(rng, 2, 3, 5);
    auto g2 = rand_gens(rng, 2, 3, 5);
    auto h1 = subgroup_automaton(f2, g1);
    auto h2 = subgroup_automaton(f2, g2);

    std::vector<StallingsAutomaton> solo{h1};
    std::vector<StallingsAutomaton> twice{h1, h1};
    std::vector<StallingsAutomaton> pair{h1, h2};
    for (const Word& w : all_reduced_words(2, 6)) {
      CHECK(benois_member(std::span<const StallingsAutomaton>(solo), w) == h1.member(w));
      CHECK(benois_member(std::span<const StallingsAutomaton>(twice), w) == h1.member(w));
      // w in H1 H2  iff  H1 w meets H2
      bool via_cosets =
          coset_intersect(CosetAutomaton(h1, w), CosetAutomaton(h2, Word{})).has_value();
      CHECK(benois_member(std::span<const StallingsAutomaton>(pair), w) == via_cosets);
    }
  }
}

TEST_CASE("canonical encodings") {
  Alphabet f2 = Alphabet::lowercase(2);
  CHECK(subgroup_automaton(f2, {"a", "b"}).canonical_encoding() ==
        subgroup_automaton(f2, {"b", "a", "a b"}).canonical_encoding());
  CHECK(subgroup_automaton(f2, {"a"}).canonical_encoding() !=
        subgroup_automaton(f2, {"a^2"}).canonical_encoding());
}

TEST_CASE("folding is confluent under random fold orders") {
  std::mt19937_64 rng(59);
  Alphabet f2 = Alphabet::lowercase(2);
  for (int trial = 0; trial < 30; ++trial) {
    GraphBuilder flower = GraphBuilder::flower(f2, rand_gens(rng, 2, 4, 7));
    std::string reference = flower.fold().canonical_encoding();
    for (int i = 0; i < 5; ++i) CHECK(flower.fold(rng()).canonical_encoding() == reference);
  }
}

TEST_CASE("dot export") {
  Alphabet f3 = Alphabet::lowercase(3);
  auto h = subgroup_automaton(f3, {"a", "b c"});
  std::ostringstream os;
  h.write_dot(os, "h");
  std::string dot = os.str();
  CHECK(dot.find("digraph h") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("label=\"a\"") != std::string::npos);
  CHECK(dot.find("label=\"c\"") != std::string::npos);
}
