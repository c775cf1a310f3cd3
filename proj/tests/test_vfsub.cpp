#include <doctest.h>

#include <random>
#include <set>

#include "fg/vfsub.hpp"
#include "oracles.hpp"

using namespace fg;
using fg::testing::enumerate_ext_subgroup;

namespace {

std::shared_ptr<const ExtensionData> f3_times_c2() {
  return ExtensionData::direct_product(Alphabet::lowercase(3), FiniteGroupTable::cyclic(2));
}

std::shared_ptr<const ExtensionData> f2_times_c2() {
  return ExtensionData::direct_product(Alphabet::lowercase(2), FiniteGroupTable::cyclic(2));
}

std::shared_ptr<const ExtensionData> f2_times_c3() {
  return ExtensionData::direct_product(Alphabet::lowercase(2), FiniteGroupTable::cyclic(3));
}

std::shared_ptr<const ExtensionData> f2_swap_c2() {
  Alphabet f2 = Alphabet::lowercase(2);
  std::vector<Endomorphism> action{
      Endomorphism::identity(2),
      Endomorphism(2, {parse_word(f2, "b"), parse_word(f2, "a")}),
  };
  return ExtensionData::semidirect(f2, FiniteGroupTable::cyclic(2), std::move(action));
}

// C2 acting by conjugation with a, with the squared cocycle; exercises every
// twisted term in the subgroup machinery.
std::shared_ptr<const ExtensionData> f2_conj_cocycle() {
  Alphabet f2 = Alphabet::lowercase(2);
  ExtensionSpec spec{f2, FiniteGroupTable::cyclic(2), {}, {}, {}, 6};
  spec.action = {Endomorphism::identity(2),
                 Endomorphism(2, {parse_word(f2, "a"), parse_word(f2, "a b a^-1")})};
  spec.cocycle.assign(2, std::vector<Word>(2));
  spec.cocycle[1][1] = parse_word(f2, "a^2");
  return std::make_shared<const ExtensionData>(std::move(spec));
}

SubgroupHandle example_h1(const std::shared_ptr<const ExtensionData>& G) {
  return close_subgroup(G, {G->parse_element("(a, 1)"), G->parse_element("(b c, 1)")});
}

SubgroupHandle example_h2(const std::shared_ptr<const ExtensionData>& G) {
  return close_subgroup(G, {G->parse_element("(a b, 1)"), G->parse_element("(c, 0)")});
}

ExtensionElement rand_element(std::mt19937_64& rng, const ExtensionData& G, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> code(0, 2 * G.alphabet().size() - 1);
  std::uniform_int_distribution<int> q(0, G.quotient().order() - 1);
  std::vector<Letter> raw;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    int c = code(rng);
    Letter l = static_cast<Letter>(c / 2 + 1);
    raw.push_back(c % 2 ? -l : l);
  }
  return {Word::reduce(raw), q(rng)};
}

std::vector<ExtensionElement> rand_subgroup_gens(std::mt19937_64& rng, const ExtensionData& G,
                                                 int max_gens, int max_len) {
  std::uniform_int_distribution<int> count(1, max_gens);
  std::vector<ExtensionElement> gens;
  int k = count(rng);
  for (int i = 0; i < k; ++i) gens.push_back(rand_element(rng, G, max_len));
  return gens;
}

// Re-multiplies a subgroup expression; used to certify positive memberships.
bool certified_submember(const SubgroupHandle& h, const ExtensionElement& x) {
  auto expr = express_in_subgroup(h, x);
  if (!expr) return false;
  const ExtensionData& G = *h.data();
  std::vector<Word> basis = h.k_basis();
  ExtensionElement acc = G.identity();
  for (int idx : expr->k_factors) {
    const Word& b = basis[std::abs(idx) - 1];
    acc = G.mul(acc, G.embed(idx > 0 ? b : b.inverse()));
  }
  acc = G.mul(acc, h.rep(expr->rep_q).element);
  return acc == x;
}

}  // namespace

TEST_CASE("closing the worked subgroups") {
  auto G = f3_times_c2();
  SubgroupHandle h1 = example_h1(G);

  CHECK(h1.q_image() == std::vector<int>{0, 1});
  CHECK(h1.coset_count() == 2);
  CHECK(h1.rep(0).element == G->identity());
  CHECK(h1.rep(1).element == G->parse_element("(a, 1)"));
  CHECK(h1.rep(1).witness == std::vector<int>{1});
  CHECK(h1.k_automaton().rank() == 3);
  CHECK(h1.k_automaton().rank() <= 2 * (2 - 1) + 1);

  SubgroupHandle h2 = example_h2(G);
  CHECK(h2.q_image() == std::vector<int>{0, 1});
  CHECK(h2.k_automaton().rank() == 3);

  // the witness product reproduces the representative
  ExtensionElement prod = G->identity();
  for (int idx : h1.rep(1).witness) {
    const auto& g = h1.generators()[std::abs(idx) - 1];
    prod = G->mul(prod, idx > 0 ? g : G->inv(g));
  }
  CHECK(prod == h1.rep(1).element);
}

TEST_CASE("subgroups inside the free part") {
  auto G = f2_times_c2();
  SubgroupHandle h = close_subgroup(G, {G->parse_element("(a b, 0)")});
  CHECK(h.inside_free_part());
  CHECK(h.q_image() == std::vector<int>{0});
  CHECK(h.k_automaton() == subgroup_automaton(G->alphabet(), {"a b"}));
  CHECK(h.rank_upper_bound() == 1);
}

TEST_CASE("finite cyclic subgroup") {
  auto G = f2_times_c2();
  SubgroupHandle h = close_subgroup(G, {G->parse_element("(1, 1)")});
  CHECK(h.q_image() == std::vector<int>{0, 1});
  CHECK(h.k_automaton().rank() == 0);
  CHECK(h.rank_upper_bound() == 1);
}

TEST_CASE("membership in the worked subgroup") {
  auto G = f3_times_c2();
  SubgroupHandle h1 = example_h1(G);

  CHECK(submember(h1, G->parse_element("(a, 1)")));
  CHECK(submember(h1, G->parse_element("((a b c)^2, 0)")));
  CHECK_FALSE(submember(h1, G->parse_element("(b, 0)")));
  CHECK(submember(h1, G->identity()));

  // brute-force products up to depth 6 never reach (b, 0)
  auto oracle = enumerate_ext_subgroup(*G, h1.generators(), 6);
  CHECK_FALSE(oracle.contains(G->parse_element("(b, 0)")));
}

TEST_CASE("membership agrees with product enumeration and carries certificates") {
  std::mt19937_64 rng(101);
  for (auto& G : {f2_times_c2(), f2_times_c3(), f2_swap_c2(), f2_conj_cocycle()}) {
    for (int trial = 0; trial < 15; ++trial) {
      auto gens = rand_subgroup_gens(rng, *G, 3, 4);
      SubgroupHandle h = close_subgroup(G, gens);
      auto oracle = enumerate_ext_subgroup(*G, gens, 5);
      int checked = 0;
      for (const ExtensionElement& x : oracle.elems) {
        if (x.w.size() > 8) continue;
        CHECK(submember(h, x));
        CHECK(certified_submember(h, x));
        if (++checked > 200) break;
      }
      // random probes: positives must carry certificates
      for (int probe = 0; probe < 50; ++probe) {
        ExtensionElement x = rand_element(rng, *G, 5);
        if (submember(h, x)) CHECK(certified_submember(h, x));
      }
    }
  }
}

TEST_CASE("intersection of the worked subgroups") {
  auto G = f3_times_c2();
  SubgroupHandle h1 = example_h1(G);
  SubgroupHandle h2 = example_h2(G);

  SubgroupIntersection meet = subintersect(h1, h2);
  const auto& cert = meet.certificate;

  CHECK(cert.rank_k == 1);
  REQUIRE(cert.k_basis.size() == 1);
  Word sq = parse_word(G->alphabet(), "(a b c)^2");
  CHECK((cert.k_basis[0] == sq || cert.k_basis[0] == sq.inverse()));
  REQUIRE(cert.layers.size() == 1);
  CHECK(cert.layers[0].q == 1);
  CHECK_FALSE(cert.layers[0].nonempty);
  CHECK(cert.nonempty_layers == 0);
  CHECK(cert.exact);
  CHECK(cert.rank_upper_bound == 1);

  CHECK(meet.subgroup.inside_free_part());
  CHECK(meet.subgroup.k_automaton() == subgroup_automaton(G->alphabet(), {"(a b c)^2"}));
  CHECK(meet.subgroup.k_automaton() == intersect(h1.k_automaton(), h2.k_automaton()));

  IntersectionBoundCheck bound = check_intersection_bound(h1, h2, cert);
  CHECK(bound.vfree_value == 6);
  CHECK(bound.observed == 1);
  CHECK(bound.pass);
  CHECK_FALSE(bound.skipped_cyclic);
}

TEST_CASE("self-intersection returns the same subgroup") {
  auto G = f2_swap_c2();
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    SubgroupHandle h = close_subgroup(G, rand_subgroup_gens(rng, *G, 3, 4));
    SubgroupIntersection meet = subintersect(h, h);
    for (const auto& g : h.generators()) CHECK(submember(meet.subgroup, g));
    for (const auto& g : meet.subgroup.generators()) CHECK(submember(h, g));
    CHECK(meet.certificate.rank_k == h.k_automaton().rank());
  }
}

TEST_CASE("intersection generators and layers agree with enumeration") {
  std::mt19937_64 rng(107);
  for (auto& G : {f2_times_c2(), f2_times_c3(), f2_swap_c2(), f2_conj_cocycle()}) {
    for (int trial = 0; trial < 12; ++trial) {
      auto g1 = rand_subgroup_gens(rng, *G, 3, 4);
      auto g2 = rand_subgroup_gens(rng, *G, 3, 4);
      SubgroupHandle h1 = close_subgroup(G, g1);
      SubgroupHandle h2 = close_subgroup(G, g2);
      SubgroupIntersection meet = subintersect(h1, h2);

      // every produced generator lies in both inputs
      for (const auto& g : meet.subgroup.generators()) {
        CHECK(submember(h1, g));
        CHECK(submember(h2, g));
      }
      // the two K automata routes agree
      CHECK(meet.subgroup.k_automaton() == intersect(h1.k_automaton(), h2.k_automaton()));

      // bounded enumeration of both subgroups: common elements must pass, and
      // their projections must light up exactly the nonempty layers
      auto o1 = enumerate_ext_subgroup(*G, g1, 5);
      auto o2 = enumerate_ext_subgroup(*G, g2, 5);
      std::set<int> seen_q;
      int checked = 0;
      for (const ExtensionElement& x : o1.elems) {
        if (!o2.contains(x)) continue;
        CHECK(submember(meet.subgroup, x));
        if (!G->is_identity(x)) seen_q.insert(x.q);
        if (++checked > 300) break;
      }
      for (const auto& layer : meet.certificate.layers) {
        if (seen_q.count(layer.q)) CHECK(layer.nonempty);
        if (layer.nonempty) {
          REQUIRE(layer.generator.has_value());
          CHECK(submember(h1, *layer.generator));
          CHECK(submember(h2, *layer.generator));
          CHECK(layer.generator->q == layer.q);
        }
      }
    }
  }
}

TEST_CASE("cyclic pairs are flagged but still satisfy the bound") {
  auto G = f2_times_c2();
  SubgroupHandle h1 = close_subgroup(G, {G->parse_element("(a b, 1)")});
  SubgroupHandle h2 = close_subgroup(G, {G->parse_element("(b, 0)")});
  SubgroupIntersection meet = subintersect(h1, h2);
  IntersectionBoundCheck bound = check_intersection_bound(h1, h2, meet.certificate);
  CHECK(bound.skipped_cyclic);
  CHECK(bound.pass);
  CHECK(bound.vfree_value == 2);  // m^2 * 0 + m
}

TEST_CASE("intersection bound checks on random pairs") {
  std::mt19937_64 rng(109);
  for (auto& G : {f2_times_c2(), f2_times_c3(), f2_swap_c2(), f2_conj_cocycle()}) {
    for (int trial = 0; trial < 40; ++trial) {
      SubgroupHandle h1 = close_subgroup(G, rand_subgroup_gens(rng, *G, 4, 5));
      SubgroupHandle h2 = close_subgroup(G, rand_subgroup_gens(rng, *G, 4, 5));
      SubgroupIntersection meet = subintersect(h1, h2);
      IntersectionBoundCheck bound = check_intersection_bound(h1, h2, meet.certificate);
      CHECK(bound.pass);
      // rk(K_j) <= m (n_j - 1) + 1
      const int m = G->quotient().order();
      CHECK(h1.k_automaton().rank() <=
            m * (static_cast<int>(h1.generators().size()) - 1) + 1);
      CHECK(h2.k_automaton().rank() <=
            m * (static_cast<int>(h2.generators().size()) - 1) + 1);
    }
  }
}

TEST_CASE("product-set membership over the extension") {
  auto G = f3_times_c2();
  SubgroupHandle h1 = example_h1(G);
  SubgroupHandle h2 = example_h2(G);

  CHECK(product_member(h1, h2, G->parse_element("(1, 1)")));
  CHECK(product_member(h1, h2, G->identity()));
  CHECK(product_member(h1, h2, G->parse_element("(a b c, 1)")));

  // cross-check on random elements against bounded double enumeration
  std::mt19937_64 rng(113);
  auto o1 = enumerate_ext_subgroup(*G, h1.generators(), 4);
  auto o2 = enumerate_ext_subgroup(*G, h2.generators(), 4);
  fg::testing::ElementSet products;
  for (const auto& x : o1.elems)
    for (const auto& y : o2.elems)
      if (x.w.size() + y.w.size() <= 10) products.elems.insert(G->mul(x, y));
  int positives = 0;
  for (const auto& p : products.elems) {
    if (p.w.size() > 4) continue;
    CHECK(product_member(h1, h2, p));
    if (++positives > 150) break;
  }
}

TEST_CASE("zakharov trace on the worked example") {
  auto G = f3_times_c2();
  SubgroupHandle h1 = example_h1(G);
  SubgroupHandle h2 = example_h2(G);

  ZakharovReport report = zakharov_trace(h1, h2, 2);
  CHECK(report.n_max == 2);
  CHECK(report.first_bound == 13);
  CHECK(report.second_bound == 13);
  CHECK(report.vfree_value == 6);

  // the only finite subgroups here are the trivial one and the central C2
  REQUIRE(report.subgroups.size() == 2);
  CHECK(report.subgroups[0].elements.size() == 1);
  CHECK(report.subgroups[1].elements.size() == 2);
  CHECK(report.subgroups[1].in_product == 2);
}

TEST_CASE("zakharov trace degenerates to the identity for free-part subgroups") {
  auto G = f3_times_c2();
  SubgroupHandle f = close_subgroup(
      G, {G->parse_element("(a, 0)"), G->parse_element("(b, 0)"), G->parse_element("(c, 0)")});
  ZakharovReport report = zakharov_trace(f, f, 2);
  CHECK(report.n_max == 1);  // only the identity of {1} x C2 lies in F
}

TEST_CASE("extension mismatch is rejected") {
  auto G1 = f2_times_c2();
  auto G2 = f2_swap_c2();
  SubgroupHandle h1 = close_subgroup(G1, {G1->parse_element("(a, 1)")});
  SubgroupHandle h2 = close_subgroup(G2, {G2->parse_element("(a b, 1)")});
  CHECK_THROWS_AS(subintersect(h1, h2), std::invalid_argument);
}
