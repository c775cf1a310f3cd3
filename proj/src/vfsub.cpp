#include "fg/vfsub.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace fg {

SubgroupHandle::SubgroupHandle(std::shared_ptr<const ExtensionData> data,
                               std::vector<ExtensionElement> generators, std::vector<int> qh,
                               std::vector<RepWitness> reps, StallingsAutomaton k_aut)
    : data_(std::move(data)),
      generators_(std::move(generators)),
      qh_(std::move(qh)),
      reps_(std::move(reps)),
      k_aut_(std::move(k_aut)) {}

bool SubgroupHandle::has_q(int q) const {
  return std::binary_search(qh_.begin(), qh_.end(), q);
}

const RepWitness& SubgroupHandle::rep(int q) const {
  auto it = std::lower_bound(qh_.begin(), qh_.end(), q);
  if (it == qh_.end() || *it != q)
    throw std::out_of_range("quotient element not in the subgroup's image");
  return reps_[it - qh_.begin()];
}

std::int64_t SubgroupHandle::rank_upper_bound() const {
  return k_aut_.rank() + static_cast<std::int64_t>(qh_.size()) - 1;
}

SubgroupHandle close_subgroup(std::shared_ptr<const ExtensionData> data,
                              std::vector<ExtensionElement> generators) {
  if (!data) throw std::invalid_argument("close_subgroup: null extension data");
  const ExtensionData& G = *data;
  for (const auto& g : generators)
    if (g.w.max_letter() > G.alphabet().size() || g.q < 0 || g.q >= G.quotient().order())
      throw std::invalid_argument("generator outside the extension");

  const int n = static_cast<int>(generators.size());

  // BFS over pi(H) <= Q; representatives are products of generators, witness
  // kept as signed generator indices.
  std::map<int, RepWitness> reps;
  reps[0] = RepWitness{0, G.identity(), {}};
  std::vector<int> order{0};
  for (std::size_t head = 0; head < order.size(); ++head) {
    int q = order[head];
    for (int j = 1; j <= n; ++j) {
      for (int sign : {+1, -1}) {
        ExtensionElement step = sign > 0 ? generators[j - 1] : G.inv(generators[j - 1]);
        int q2 = G.quotient().mul(q, step.q);
        if (reps.count(q2)) continue;
        RepWitness rw;
        rw.q = q2;
        rw.element = G.mul(reps[q].element, step);
        rw.witness = reps[q].witness;
        rw.witness.push_back(sign * j);
        reps[q2] = std::move(rw);
        order.push_back(q2);
      }
    }
  }

  std::vector<int> qh;
  qh.reserve(reps.size());
  for (const auto& [q, rw] : reps) qh.push_back(q);  // std::map keeps them sorted

  // Schreier generators h_q g h_{q pi(g)}^-1, positive generators only.
  std::vector<Word> schreier;
  for (int q : qh) {
    for (int j = 1; j <= n; ++j) {
      const ExtensionElement& g = generators[j - 1];
      int q2 = G.quotient().mul(q, g.q);
      ExtensionElement s = G.mul(G.mul(reps[q].element, g), G.inv(reps[q2].element));
      assert(s.q == 0);
      if (!s.w.empty()) schreier.push_back(s.w);
    }
  }
  StallingsAutomaton k_aut = subgroup_automaton(G.alphabet(), schreier);

  // rk(K) <= [H:K](n - 1) + 1; automatic for Schreier generators over a
  // spanning tree, so a failure here is an implementation bug.
  if (n > 0 && k_aut.rank() > static_cast<std::int64_t>(qh.size()) * (n - 1) + 1)
    throw std::logic_error("Schreier generator rank bound violated");

  std::vector<RepWitness> rep_list;
  rep_list.reserve(qh.size());
  for (int q : qh) rep_list.push_back(reps[q]);
  return SubgroupHandle(std::move(data), std::move(generators), std::move(qh),
                        std::move(rep_list), std::move(k_aut));
}

bool submember(const SubgroupHandle& h, const ExtensionElement& x) {
  const ExtensionData& G = *h.data();
  if (!h.has_q(G.project(x))) return false;
  ExtensionElement y = G.mul(x, G.inv(h.rep(G.project(x)).element));
  assert(y.q == 0);
  return h.k_automaton().member(y.w);
}

std::optional<SubgroupExpression> express_in_subgroup(const SubgroupHandle& h,
                                                      const ExtensionElement& x) {
  const ExtensionData& G = *h.data();
  if (!h.has_q(G.project(x))) return std::nullopt;
  ExtensionElement y = G.mul(x, G.inv(h.rep(G.project(x)).element));
  auto expr = h.k_automaton().express_in_basis(y.w);
  if (!expr) return std::nullopt;
  return SubgroupExpression{std::move(*expr), G.project(x)};
}

SubgroupIntersection subintersect(const SubgroupHandle& h1, const SubgroupHandle& h2) {
  if (h1.data() != h2.data() && *h1.data() != *h2.data())
    throw std::invalid_argument("subintersect: extension mismatch");
  const ExtensionData& G = *h1.data();

  StallingsAutomaton k = intersect(h1.k_automaton(), h2.k_automaton());
  IntersectionCertificate cert;
  cert.k_basis = k.basis();
  cert.rank_k = k.rank();

  std::vector<ExtensionElement> generators;
  for (const Word& b : cert.k_basis) generators.push_back(G.embed(b));

  for (int q : h1.q_image()) {
    if (q == 0 || !h2.has_q(q)) continue;
    LayerStatus layer;
    layer.q = q;
    // d = free part of h1_q h2_q^-1; the layer holds an element iff some
    // u in K1 has u d in K2.
    ExtensionElement diff = G.mul(h1.rep(q).element, G.inv(h2.rep(q).element));
    assert(diff.q == 0);
    CosetAutomaton c1(h1.k_automaton(), Word{});
    CosetAutomaton c2(h2.k_automaton(), diff.w.inverse());
    if (auto u = coset_intersect(c1, c2)) {
      layer.nonempty = true;
      layer.representative = *u;
      layer.generator = G.mul(G.embed(*u), h1.rep(q).element);
      generators.push_back(*layer.generator);
      ++cert.nonempty_layers;
    }
    cert.layers.push_back(std::move(layer));
  }

  cert.rank_upper_bound = cert.rank_k + cert.nonempty_layers;
  cert.exact = cert.nonempty_layers == 0;
  return SubgroupIntersection{close_subgroup(h1.data(), std::move(generators)), std::move(cert)};
}

IntersectionBoundCheck check_intersection_bound(const SubgroupHandle& h1,
                                                const SubgroupHandle& h2,
                                                const IntersectionCertificate& cert) {
  IntersectionBoundCheck out;
  out.n1 = static_cast<std::int64_t>(h1.generators().size());
  out.n2 = static_cast<std::int64_t>(h2.generators().size());
  out.m = h1.data()->quotient().order();
  out.skipped_cyclic = out.n1 < 2 || out.n2 < 2;
  out.vfree_value = bounds::vfree_bound(std::max<std::int64_t>(out.n1, 1),
                                        std::max<std::int64_t>(out.n2, 1), out.m);
  out.observed = cert.rank_upper_bound;
  out.pass = bounds::Int(out.observed) <= out.vfree_value;
  return out;
}

bool product_member(const SubgroupHandle& h1, const SubgroupHandle& h2,
                    const ExtensionElement& x) {
  const ExtensionData& G = *h1.data();
  for (int q1 : h1.q_image()) {
    for (int q2 : h2.q_image()) {
      if (G.quotient().mul(q1, q2) != x.q) continue;
      // x in K1 h1_{q1} K2 h2_{q2}
      //   iff x (h1_{q1} h2_{q2})^-1 in K1 . (h1_{q1} K2 h1_{q1}^-1)
      ExtensionElement c = G.mul(h1.rep(q1).element, h2.rep(q2).element);
      ExtensionElement v = G.mul(x, G.inv(c));
      assert(v.q == 0);

      const ExtensionElement& hq1 = h1.rep(q1).element;
      std::vector<Word> conj_gens;
      for (const Word& b : h2.k_automaton().basis()) {
        ExtensionElement t = G.mul(G.mul(hq1, G.embed(b)), G.inv(hq1));
        assert(t.q == 0);
        conj_gens.push_back(t.w);
      }
      StallingsAutomaton conj = subgroup_automaton(G.alphabet(), conj_gens);
      std::vector<StallingsAutomaton> factors{h1.k_automaton(), conj};
      if (benois_member(std::span<const StallingsAutomaton>(factors), v.w)) return true;
    }
  }
  return false;
}

namespace {

struct ElementLess {
  bool operator()(const ExtensionElement& a, const ExtensionElement& b) const {
    if (a.q != b.q) return a.q < b.q;
    return a.w < b.w;
  }
};

// Closes a generating set under multiplication; nullopt when the closure
// exceeds |Q| elements (a finite subgroup embeds in Q, so it cannot).
std::optional<std::vector<ExtensionElement>> close_finite(
    const ExtensionData& G, const std::vector<ExtensionElement>& gens) {
  const std::size_t cap = static_cast<std::size_t>(G.quotient().order());
  std::set<ExtensionElement, ElementLess> elems;
  elems.insert(G.identity());
  std::vector<ExtensionElement> queue{G.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      for (const ExtensionElement& next :
           {G.mul(queue[head], g), G.mul(queue[head], G.inv(g))}) {
        if (elems.insert(next).second) {
          if (elems.size() > cap) return std::nullopt;
          queue.push_back(next);
        }
      }
    }
  }
  return std::vector<ExtensionElement>(elems.begin(), elems.end());
}

void enumerate_reduced(const Alphabet& a, int max_len,
                       const std::function<void(const Word&)>& visit) {
  std::vector<Word> frontier{Word{}};
  visit(Word{});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& u : frontier) {
      for (int l = 1; l <= a.size(); ++l) {
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

}  // namespace

ZakharovReport zakharov_trace(const SubgroupHandle& h1, const SubgroupHandle& h2,
                              int max_free_len) {
  const ExtensionData& G = *h1.data();
  const int m = G.quotient().order();

  // Torsion elements with short free part: (w, q) has finite order iff its
  // ord(q)-th power is the identity (the free part of that power must die).
  std::vector<ExtensionElement> torsion;
  enumerate_reduced(G.alphabet(), max_free_len, [&](const Word& w) {
    for (int q = 1; q < m; ++q) {
      ExtensionElement x{w, q};
      if (G.is_identity(G.pow(x, G.quotient().element_order(q)))) torsion.push_back(x);
    }
  });

  // Candidate finite subgroups: closures of singletons and pairs, capped at
  // |Q| elements.
  std::set<std::string> seen;
  std::vector<std::vector<ExtensionElement>> subgroups{{G.identity()}};
  auto consider = [&](const std::vector<ExtensionElement>& gens) {
    auto closed = close_finite(G, gens);
    if (!closed || closed->size() <= 1) return;
    std::string key;
    for (const auto& x : *closed) key += G.format(x) + "|";
    if (seen.insert(key).second) subgroups.push_back(*closed);
  };
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    consider({torsion[i]});
    for (std::size_t j = i + 1; j < torsion.size(); ++j) consider({torsion[i], torsion[j]});
  }

  ZakharovReport report;
  report.free_len_budget = max_free_len;
  for (const auto& elems : subgroups) {
    FiniteSubgroupTrace trace;
    trace.elements = elems;
    for (const auto& x : elems)
      if (product_member(h1, h2, x)) ++trace.in_product;
    report.n_max = std::max(report.n_max, trace.in_product);
    report.subgroups.push_back(std::move(trace));
  }

  const auto n1 = static_cast<std::int64_t>(h1.generators().size());
  const auto n2 = static_cast<std::int64_t>(h2.generators().size());
  report.first_bound = bounds::zakharov_bound(report.n_max, std::max<std::int64_t>(n1, 1),
                                              std::max<std::int64_t>(n2, 1));
  report.second_bound =
      bounds::zakharov_bound(m, std::max<std::int64_t>(n1, 1), std::max<std::int64_t>(n2, 1));
  report.vfree_value =
      bounds::vfree_bound(std::max<std::int64_t>(n1, 1), std::max<std::int64_t>(n2, 1), m);
  return report;
}

}  // namespace fg
