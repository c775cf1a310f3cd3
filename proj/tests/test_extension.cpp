#include <doctest.h>

#include <random>
#include <sstream>

#include "fg/extension.hpp"
#include "oracles.hpp"

using namespace fg;

namespace {

ExtensionElement rand_element(std::mt19937_64& rng, const ExtensionData& G, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(1, G.alphabet().size());
  std::uniform_int_distribution<int> sign(0, 1);
  std::uniform_int_distribution<int> q(0, G.quotient().order() - 1);
  std::vector<Letter> raw;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    Letter l = static_cast<Letter>(letter(rng));
    raw.push_back(sign(rng) ? l : -l);
  }
  return {Word::reduce(raw), q(rng)};
}

std::shared_ptr<const ExtensionData> f3_times_c2() {
  return ExtensionData::direct_product(Alphabet::lowercase(3), FiniteGroupTable::cyclic(2));
}

std::shared_ptr<const ExtensionData> f2_swap_c2() {
  Alphabet f2 = Alphabet::lowercase(2);
  std::vector<Endomorphism> action{
      Endomorphism::identity(2),
      Endomorphism(2, {parse_word(f2, "b"), parse_word(f2, "a")}),
  };
  return ExtensionData::semidirect(f2, FiniteGroupTable::cyclic(2), std::move(action));
}

// F extended by C2 where the generator acts by conjugation with a and
// squares to a^2 (a genuinely nontrivial cocycle).
std::shared_ptr<const ExtensionData> f2_conj_cocycle() {
  Alphabet f2 = Alphabet::lowercase(2);
  ExtensionSpec spec{f2, FiniteGroupTable::cyclic(2), {}, {}, {}, 6};
  spec.action = {Endomorphism::identity(2),
                 Endomorphism(2, {parse_word(f2, "a"), parse_word(f2, "a b a^-1")})};
  spec.cocycle.assign(2, std::vector<Word>(2));
  spec.cocycle[1][1] = parse_word(f2, "a^2");
  return std::make_shared<const ExtensionData>(std::move(spec));
}

}  // namespace

TEST_CASE("finite group tables") {
  auto c4 = FiniteGroupTable::cyclic(4);
  CHECK(c4.order() == 4);
  CHECK(c4.mul(3, 2) == 1);
  CHECK(c4.inverse(1) == 3);
  CHECK(c4.element_order(2) == 2);
  CHECK(c4.element_order(1) == 4);
  CHECK(c4.element_order(0) == 1);

  CHECK_THROWS_AS(FiniteGroupTable({{0, 1}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroupTable({{1, 0}, {0, 1}}), std::invalid_argument);
  // associativity failure: a latin square with identity that is not a group
  CHECK_THROWS_AS(FiniteGroupTable({{0, 1, 2, 3, 4},
                                    {1, 0, 3, 4, 2},
                                    {2, 4, 0, 1, 3},
                                    {3, 2, 4, 0, 1},
                                    {4, 3, 1, 2, 0}}),
                  std::invalid_argument);
}

TEST_CASE("extension validation accepts the standard constructions") {
  CHECK(f3_times_c2() != nullptr);
  CHECK(f2_swap_c2() != nullptr);
  CHECK(f2_conj_cocycle() != nullptr);
}

TEST_CASE("extension validation rejects corrupted data") {
  Alphabet f2 = Alphabet::lowercase(2);

  // nontrivial f(1,1) with a trivial action cannot satisfy compatibility
  ExtensionSpec bad_cocycle{f2, FiniteGroupTable::cyclic(2), {}, {}, {}, 6};
  bad_cocycle.cocycle.assign(2, std::vector<Word>(2));
  bad_cocycle.cocycle[1][1] = parse_word(f2, "a");
  auto violation = check_extension(bad_cocycle);
  REQUIRE(violation.has_value());
  CHECK(violation->axiom == "action compatibility");
  CHECK_THROWS_AS(ExtensionData{bad_cocycle}, std::invalid_argument);

  // unnormalized cocycle
  ExtensionSpec bad_norm{f2, FiniteGroupTable::cyclic(2), {}, {}, {}, 6};
  bad_norm.cocycle.assign(2, std::vector<Word>(2));
  bad_norm.cocycle[0][1] = parse_word(f2, "b");
  violation = check_extension(bad_norm);
  REQUIRE(violation.has_value());
  CHECK(violation->axiom == "cocycle normalization");

  // action maps must generate the whole free group
  ExtensionSpec bad_action{f2, FiniteGroupTable::cyclic(2), {}, {}, {}, 6};
  bad_action.action = {Endomorphism::identity(2),
                       Endomorphism(2, {parse_word(f2, "a^2"), parse_word(f2, "b")})};
  violation = check_extension(bad_action);
  REQUIRE(violation.has_value());
  CHECK(violation->axiom == "action automorphism");

  // identity must act trivially
  ExtensionSpec bad_id{f2, FiniteGroupTable::cyclic(2), {}, {}, {}, 6};
  bad_id.action = {Endomorphism(2, {parse_word(f2, "b"), parse_word(f2, "a")}),
                   Endomorphism::identity(2)};
  violation = check_extension(bad_id);
  REQUIRE(violation.has_value());
  CHECK(violation->axiom == "identity action");
}

TEST_CASE("multiplication in a direct product") {
  auto G = f3_times_c2();
  ExtensionElement x = G->parse_element("(a, 1)");
  ExtensionElement y = G->parse_element("(b c, 1)");
  CHECK(G->mul(x, y) == G->parse_element("(a b c, 0)"));
  ExtensionElement w = G->parse_element("(b a^-1, 0)");
  CHECK(G->mul(w, G->identity()) == w);
  CHECK(G->mul(G->identity(), w) == w);
}

TEST_CASE("multiplication under a swap action") {
  auto G = f2_swap_c2();
  ExtensionElement x = G->parse_element("(a, 1)");
  CHECK(G->mul(x, x) == G->parse_element("(a b, 0)"));
}

TEST_CASE("inverses") {
  auto G = f3_times_c2();
  CHECK(G->inv(G->parse_element("(a b, 0)")) == G->parse_element("(b^-1 a^-1, 0)"));
  CHECK(G->inv(G->parse_element("(a, 1)")) == G->parse_element("(a^-1, 1)"));

  std::mt19937_64 rng(3);
  for (auto& G2 : {f3_times_c2(), f2_swap_c2(), f2_conj_cocycle()}) {
    for (int trial = 0; trial < 100; ++trial) {
      ExtensionElement x = rand_element(rng, *G2, 6);
      CHECK(G2->is_identity(G2->mul(x, G2->inv(x))));
      CHECK(G2->is_identity(G2->mul(G2->inv(x), x)));
    }
  }
}

TEST_CASE("associativity and the projection homomorphism") {
  std::mt19937_64 rng(5);
  for (auto& G : {f3_times_c2(), f2_swap_c2(), f2_conj_cocycle()}) {
    for (int trial = 0; trial < 120; ++trial) {
      ExtensionElement x = rand_element(rng, *G, 5);
      ExtensionElement y = rand_element(rng, *G, 5);
      ExtensionElement z = rand_element(rng, *G, 5);
      CHECK(G->mul(G->mul(x, y), z) == G->mul(x, G->mul(y, z)));
      CHECK(G->project(G->mul(x, y)) == G->quotient().mul(G->project(x), G->project(y)));
    }
  }
}

TEST_CASE("the free part embeds") {
  auto G = f2_swap_c2();
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    ExtensionElement x = rand_element(rng, *G, 6);
    ExtensionElement y = rand_element(rng, *G, 6);
    x.q = 0;
    y.q = 0;
    ExtensionElement xy = G->mul(x, y);
    CHECK(xy.q == 0);
    CHECK(xy.w == mul(x.w, y.w));
  }
}

TEST_CASE("powers and torsion") {
  auto G = f3_times_c2();
  ExtensionElement t = G->parse_element("(1, 1)");
  CHECK(G->is_identity(G->pow(t, 2)));
  CHECK(G->pow(G->parse_element("(a b c, 0)"), 2) == G->parse_element("((a b c)^2, 0)"));
  CHECK(G->pow(t, -1) == t);
}

TEST_CASE("element syntax") {
  auto G = f3_times_c2();
  CHECK(G->format(G->parse_element("( a b^-1 , 1 )")) == "(a b^-1, 1)");
  CHECK(G->parse_element("a b") == ExtensionElement{parse_word(G->alphabet(), "a b"), 0});
  CHECK(G->parse_element("(a b c)^2").w == parse_word(G->alphabet(), "a b c a b c"));
  CHECK(G->format(G->identity()) == "(1, 0)");
  CHECK_THROWS(G->parse_element("(a, 7)"));
}

TEST_CASE("extension text format") {
  std::string text = R"(# three free letters extended by a cyclic group
alphabet a b c
quotient 2
0 1
1 0
)";
  std::istringstream in(text);
  auto G = load_extension(in);
  CHECK(G->alphabet().size() == 3);
  CHECK(G->quotient().order() == 2);
  CHECK(G->mul(G->parse_element("(a, 1)"), G->parse_element("(b c, 1)")) ==
        G->parse_element("(a b c, 0)"));

  std::string swap_text = R"(
alphabet a b
quotient 2
0 1
1 0
action 1: a -> b, b -> a
)";
  std::istringstream in2(swap_text);
  auto S = load_extension(in2);
  CHECK(S->mul(S->parse_element("(a, 1)"), S->parse_element("(a, 1)")) ==
        S->parse_element("(a b, 0)"));

  std::string cocycle_text = R"(
alphabet a b
quotient 2
0 1
1 0
action 1: a -> a, b -> a b a^-1
cocycle 1 1: a^2
)";
  std::istringstream in3(cocycle_text);
  auto C = load_extension(in3);
  ExtensionElement t = C->parse_element("(1, 1)");
  CHECK(C->pow(t, 2) == C->parse_element("(a^2, 0)"));

  std::string bad = R"(
alphabet a b
quotient 2
0 1
1 0
cocycle 1 1: a^2
)";
  std::istringstream in4(bad);
  CHECK_THROWS_AS(load_extension(in4), std::invalid_argument);

  std::istringstream in5("alphabet a b\n");
  CHECK_THROWS_AS(load_extension(in5), std::runtime_error);
}

TEST_CASE("endomorphism inverse search") {
  Alphabet f2 = Alphabet::lowercase(2);
  auto psi = find_inverse(Endomorphism(2, {parse_word(f2, "a b"), parse_word(f2, "b")}), 6);
  REQUIRE(psi.has_value());
  CHECK(psi->image(1) == parse_word(f2, "a b^-1"));
  CHECK(psi->image(2) == parse_word(f2, "b"));

  // a -> a^2 is injective but not onto; no inverse exists
  CHECK_FALSE(find_inverse(Endomorphism(2, {parse_word(f2, "a^2"), parse_word(f2, "b")}), 5)
                  .has_value());
}

TEST_CASE("action inverses are found or must be supplied") {
  Alphabet f2 = Alphabet::lowercase(2);
  // conjugation by a^4, squaring to a^8: the preimage of b has length 9, out
  // of reach for a length-3 search
  Endomorphism conj_a4(2, {parse_word(f2, "a"), parse_word(f2, "a^4 b a^-4")});
  Endomorphism conj_a4_inv(2, {parse_word(f2, "a"), parse_word(f2, "a^-4 b a^4")});
  ExtensionSpec spec{f2, FiniteGroupTable::cyclic(2), {}, {}, {}, 3};
  spec.action = {Endomorphism::identity(2), conj_a4};
  spec.cocycle.assign(2, std::vector<Word>(2));
  spec.cocycle[1][1] = parse_word(f2, "a^8");
  CHECK(!check_extension(spec).has_value());
  CHECK_THROWS_AS(ExtensionData{spec}, std::invalid_argument);

  spec.action_inverse = {std::nullopt, conj_a4_inv};
  ExtensionData G(spec);
  ExtensionElement x = G.parse_element("(b, 1)");
  CHECK(G.is_identity(G.mul(x, G.inv(x))));
  CHECK(G.is_identity(G.mul(G.inv(x), x)));
}
