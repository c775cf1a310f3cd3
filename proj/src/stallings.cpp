#include "fg/stallings.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <deque>
#include <ostream>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace fg {

// ---------------------------------------------------------------------------
// EdgeTable

EdgeTable::EdgeTable(int alphabet_size, std::size_t vertices) : alpha_(alphabet_size) {
  if (alpha_ < 1) throw std::invalid_argument("alphabet size must be >= 1");
  fwd_.assign(vertices * alpha_, kNoVertex);
  bwd_.assign(vertices * alpha_, kNoVertex);
}

Vertex EdgeTable::add_vertex() {
  fwd_.insert(fwd_.end(), alpha_, kNoVertex);
  bwd_.insert(bwd_.end(), alpha_, kNoVertex);
  return static_cast<Vertex>(vertex_count() - 1);
}

void EdgeTable::set_edge(Vertex p, int a, Vertex q) {
  Vertex& f = fwd_[p * alpha_ + a - 1];
  Vertex& b = bwd_[q * alpha_ + a - 1];
  if ((f != kNoVertex && f != q) || (b != kNoVertex && b != p))
    throw std::logic_error("edge clashes with an existing label");
  f = q;
  b = p;
}

void EdgeTable::set_step(Vertex from, Letter l, Vertex to) {
  if (l > 0)
    set_edge(from, l, to);
  else
    set_edge(to, -l, from);
}

void EdgeTable::clear_edge(Vertex p, int a) {
  Vertex q = fwd(p, a);
  if (q == kNoVertex) return;
  fwd_[p * alpha_ + a - 1] = kNoVertex;
  bwd_[q * alpha_ + a - 1] = kNoVertex;
}

std::size_t EdgeTable::edge_count() const {
  std::size_t n = 0;
  for (Vertex t : fwd_)
    if (t != kNoVertex) ++n;
  return n;
}

Vertex EdgeTable::walk(Vertex from, const Word& w) const {
  Vertex v = from;
  for (Letter l : w.letters()) {
    if (std::abs(l) > alpha_) return kNoVertex;
    v = step(v, l);
    if (v == kNoVertex) return kNoVertex;
  }
  return v;
}

// ---------------------------------------------------------------------------
// GraphBuilder and folding

GraphBuilder::GraphBuilder(Alphabet a) : alphabet_(std::move(a)) { add_vertex(); }

Vertex GraphBuilder::add_vertex() { return static_cast<Vertex>(vertices_++); }

void GraphBuilder::add_edge(Vertex p, Letter l, Vertex q) {
  if (p >= vertices_ || q >= vertices_) throw std::out_of_range("vertex out of range");
  if (l == 0 || std::abs(l) > alphabet_.size())
    throw std::invalid_argument("letter out of alphabet range");
  if (l > 0)
    edges_.emplace_back(p, l, q);
  else
    edges_.emplace_back(q, -l, p);
}

GraphBuilder GraphBuilder::flower(Alphabet a, std::span<const Word> generators) {
  GraphBuilder g(std::move(a));
  for (const Word& raw : generators) {
    Word w = Word::reduce(raw.letters());
    if (w.empty()) continue;
    if (w.max_letter() > g.alphabet_.size())
      throw std::invalid_argument("generator uses a letter outside the alphabet");
    Vertex prev = 0;
    const auto& ls = w.letters();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      Vertex next = (i + 1 == ls.size()) ? 0 : g.add_vertex();
      g.add_edge(prev, ls[i], next);
      prev = next;
    }
  }
  return g;
}

namespace {

struct UnionFind {
  std::vector<Vertex> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<Vertex>(i);
  }
  Vertex find(Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

}  // namespace

StallingsAutomaton GraphBuilder::fold(std::optional<std::uint64_t> shuffle_seed) const {
  UnionFind uf(vertices_);
  // Half-edge map per class root: signed letter -> some original target id.
  std::vector<std::unordered_map<Letter, Vertex>> maps(vertices_);
  std::vector<std::pair<Vertex, Vertex>> pending;

  std::mt19937_64 rng(shuffle_seed.value_or(0));

  auto insert_half = [&](Vertex at, Letter l, Vertex to) {
    Vertex r = uf.find(at);
    auto [it, fresh] = maps[r].try_emplace(l, to);
    if (!fresh && uf.find(it->second) != uf.find(to)) pending.emplace_back(it->second, to);
  };

  std::vector<std::size_t> order(edges_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (shuffle_seed) std::shuffle(order.begin(), order.end(), rng);

  for (std::size_t i : order) {
    auto [p, a, q] = edges_[i];
    insert_half(p, a, q);
    insert_half(q, -a, p);
  }

  while (!pending.empty()) {
    std::size_t pick = pending.size() - 1;
    if (shuffle_seed) pick = std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(rng);
    auto [x, y] = pending[pick];
    pending[pick] = pending.back();
    pending.pop_back();

    Vertex rx = uf.find(x), ry = uf.find(y);
    if (rx == ry) continue;
    if (maps[rx].size() < maps[ry].size()) std::swap(rx, ry);
    uf.parent[ry] = rx;
    for (auto [l, to] : maps[ry]) {
      auto [it, fresh] = maps[rx].try_emplace(l, to);
      if (!fresh && uf.find(it->second) != uf.find(to)) pending.emplace_back(it->second, to);
    }
    maps[ry].clear();
  }

  // Quotient graph on class roots.
  std::vector<Vertex> id(vertices_, kNoVertex);
  Vertex classes = 0;
  for (Vertex v = 0; v < vertices_; ++v)
    if (uf.find(v) == v) id[v] = classes++;

  EdgeTable quotient(alphabet_.size(), classes);
  std::vector<bool> seen(static_cast<std::size_t>(classes) * alphabet_.size(), false);
  for (auto [p, a, q] : edges_) {
    Vertex cp = id[uf.find(p)], cq = id[uf.find(q)];
    std::size_t key = static_cast<std::size_t>(cp) * alphabet_.size() + (a - 1);
    if (seen[key]) continue;
    seen[key] = true;
    quotient.set_edge(cp, a, cq);
  }

  return StallingsAutomaton::normalize(alphabet_, quotient, id[uf.find(0)]);
}

// ---------------------------------------------------------------------------
// StallingsAutomaton

StallingsAutomaton StallingsAutomaton::trivial(Alphabet a) {
  EdgeTable g(a.size(), 1);
  return StallingsAutomaton(std::move(a), std::move(g));
}

StallingsAutomaton StallingsAutomaton::normalize(Alphabet a, const EdgeTable& g, Vertex base) {
  const int A = g.alphabet_size();
  const std::size_t n = g.vertex_count();

  // Base component (edges are involutive, so BFS both directions).
  std::vector<bool> alive(n, false);
  {
    std::deque<Vertex> q{base};
    alive[base] = true;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      for (int l = 1; l <= A; ++l) {
        for (Vertex w : {g.fwd(v, l), g.bwd(v, l)}) {
          if (w != kNoVertex && !alive[w]) {
            alive[w] = true;
            q.push_back(w);
          }
        }
      }
    }
  }

  // Degree-1 peel; the base vertex is never removed.
  std::vector<int> degree(n, 0);
  auto half_edges = [&](Vertex v) {
    int d = 0;
    for (int l = 1; l <= A; ++l) {
      if (g.fwd(v, l) != kNoVertex && alive[g.fwd(v, l)]) ++d;
      if (g.bwd(v, l) != kNoVertex && alive[g.bwd(v, l)]) ++d;
    }
    return d;
  };
  EdgeTable work = g;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) degree[v] = half_edges(v);
  std::deque<Vertex> peel;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v] && v != base && degree[v] <= 1) peel.push_back(v);
  while (!peel.empty()) {
    Vertex v = peel.front();
    peel.pop_front();
    if (!alive[v]) continue;
    alive[v] = false;
    for (int l = 1; l <= A; ++l) {
      Vertex w = work.fwd(v, l);
      if (w != kNoVertex) {
        work.clear_edge(v, l);
        if (alive[w] && --degree[w] <= 1 && w != base) peel.push_back(w);
      }
      Vertex u = work.bwd(v, l);
      if (u != kNoVertex) {
        work.clear_edge(u, l);
        if (alive[u] && --degree[u] <= 1 && u != base) peel.push_back(u);
      }
    }
  }

  // Canonical renumbering: BFS from base, letters in the order
  // a, a^-1, b, b^-1, ...
  std::vector<Vertex> newid(n, kNoVertex);
  std::vector<Vertex> bfs;
  newid[base] = 0;
  bfs.push_back(base);
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    Vertex v = bfs[head];
    for (int l = 1; l <= A; ++l) {
      for (Vertex w : {work.fwd(v, l), work.bwd(v, l)}) {
        if (w != kNoVertex && alive[w] && newid[w] == kNoVertex) {
          newid[w] = static_cast<Vertex>(bfs.size());
          bfs.push_back(w);
        }
      }
    }
  }

  EdgeTable canon(A, bfs.size());
  for (Vertex v : bfs)
    for (int l = 1; l <= A; ++l) {
      Vertex w = work.fwd(v, l);
      if (w != kNoVertex && alive[w]) canon.set_edge(newid[v], l, newid[w]);
    }
  return StallingsAutomaton(std::move(a), std::move(canon));
}

bool StallingsAutomaton::member(const Word& w) const {
  if (w.max_letter() > alphabet_.size())
    throw std::invalid_argument("word uses a letter outside the automaton's alphabet");
  return graph_.walk(base(), w) == base();
}

std::int64_t StallingsAutomaton::rank() const {
  return static_cast<std::int64_t>(edge_count()) - static_cast<std::int64_t>(vertex_count()) + 1;
}

namespace {

// BFS spanning tree in canonical letter order; tree[v*A + a - 1] marks the
// positive edge (v, a, fwd(v, a)) as a tree edge.
struct SpanningTree {
  std::vector<bool> tree;
  std::vector<Word> to_vertex;  // reduced path label base -> v
};

SpanningTree spanning_tree(const EdgeTable& g, Vertex base) {
  const int A = g.alphabet_size();
  const std::size_t n = g.vertex_count();
  SpanningTree st;
  st.tree.assign(n * A, false);
  st.to_vertex.assign(n, Word{});
  std::vector<bool> visited(n, false);
  std::vector<Vertex> bfs{base};
  visited[base] = true;
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    Vertex v = bfs[head];
    for (int l = 1; l <= A; ++l) {
      Vertex w = g.fwd(v, l);
      if (w != kNoVertex && !visited[w]) {
        visited[w] = true;
        st.tree[v * A + l - 1] = true;
        st.to_vertex[w] = mul(st.to_vertex[v], Word::reduce({l}));
        bfs.push_back(w);
      }
      Vertex u = g.bwd(v, l);
      if (u != kNoVertex && !visited[u]) {
        visited[u] = true;
        st.tree[u * A + l - 1] = true;
        st.to_vertex[u] = mul(st.to_vertex[v], Word::reduce({-l}));
        bfs.push_back(u);
      }
    }
  }
  return st;
}

}  // namespace

std::vector<Word> StallingsAutomaton::basis() const {
  const int A = alphabet_.size();
  SpanningTree st = spanning_tree(graph_, base());
  std::vector<Word> out;
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (int l = 1; l <= A; ++l) {
      Vertex w = graph_.fwd(v, l);
      if (w == kNoVertex || st.tree[v * A + l - 1]) continue;
      out.push_back(mul(mul(st.to_vertex[v], Word::reduce({l})), st.to_vertex[w].inverse()));
    }
  return out;
}

std::optional<std::int64_t> StallingsAutomaton::index() const {
  // Complete on positive out-edges <=> complete on both directions, since
  // each letter's edge map is a partial injection on a finite vertex set.
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (int l = 1; l <= alphabet_.size(); ++l)
      if (graph_.fwd(v, l) == kNoVertex) return std::nullopt;
  return static_cast<std::int64_t>(vertex_count());
}

std::optional<std::vector<int>> StallingsAutomaton::express_in_basis(const Word& w) const {
  const int A = alphabet_.size();
  SpanningTree st = spanning_tree(graph_, base());
  // basis index per non-tree positive edge, in basis() order
  std::vector<int> edge_index(vertex_count() * A, 0);
  int next = 1;
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (int l = 1; l <= A; ++l)
      if (graph_.fwd(v, l) != kNoVertex && !st.tree[v * A + l - 1]) edge_index[v * A + l - 1] = next++;

  std::vector<int> expr;
  Vertex v = base();
  for (Letter l : w.letters()) {
    if (std::abs(l) > A) return std::nullopt;
    Vertex to = graph_.step(v, l);
    if (to == kNoVertex) return std::nullopt;
    int idx = l > 0 ? edge_index[v * A + l - 1] : edge_index[to * A + (-l) - 1];
    if (idx != 0) expr.push_back(l > 0 ? idx : -idx);
    v = to;
  }
  if (v != base()) return std::nullopt;
  return expr;
}

std::string StallingsAutomaton::canonical_encoding() const {
  std::string out = "v" + std::to_string(vertex_count());
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (int l = 1; l <= alphabet_.size(); ++l) {
      Vertex w = graph_.fwd(v, l);
      if (w == kNoVertex) continue;
      out += ";" + std::to_string(v) + "," + std::to_string(l) + "," + std::to_string(w);
    }
  return out;
}

bool StallingsAutomaton::operator==(const StallingsAutomaton& other) const {
  return alphabet_ == other.alphabet_ && canonical_encoding() == other.canonical_encoding();
}

namespace {

void write_dot_graph(std::ostream& os, const std::string& name, const Alphabet& a,
                     const EdgeTable& g, Vertex base, Vertex accept) {
  os << "digraph " << name << " {\n";
  os << "  rankdir=LR;\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    os << "  " << v << " [shape=" << (v == base ? "doublecircle" : "circle");
    if (v == accept && accept != base) os << ", peripheries=3";
    os << "];\n";
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (int l = 1; l <= a.size(); ++l) {
      Vertex w = g.fwd(v, l);
      if (w == kNoVertex) continue;
      os << "  " << v << " -> " << w << " [label=\"" << a.name(l) << "\"];\n";
    }
  os << "}\n";
}

}  // namespace

void StallingsAutomaton::write_dot(std::ostream& os, const std::string& name) const {
  write_dot_graph(os, name, alphabet_, graph_, base(), base());
}

// ---------------------------------------------------------------------------
// Intersection (pullback)

namespace {

std::uint64_t pair_key(Vertex x, Vertex y) {
  return (static_cast<std::uint64_t>(x) << 32) | y;
}

}  // namespace

StallingsAutomaton intersect(const StallingsAutomaton& h1, const StallingsAutomaton& h2) {
  if (h1.alphabet() != h2.alphabet())
    throw std::invalid_argument("intersect: alphabet mismatch");
  const int A = h1.alphabet().size();
  const EdgeTable& g1 = h1.graph();
  const EdgeTable& g2 = h2.graph();

  EdgeTable product(A);
  std::unordered_map<std::uint64_t, Vertex> ids;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  auto id_of = [&](Vertex x, Vertex y) {
    auto [it, fresh] = ids.try_emplace(pair_key(x, y), static_cast<Vertex>(pairs.size()));
    if (fresh) {
      pairs.emplace_back(x, y);
      product.add_vertex();
    }
    return it->second;
  };

  Vertex start = id_of(h1.base(), h2.base());
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    auto [x, y] = pairs[head];
    Vertex from = static_cast<Vertex>(head);
    for (int l = 1; l <= A; ++l) {
      Vertex fx = g1.fwd(x, l), fy = g2.fwd(y, l);
      if (fx != kNoVertex && fy != kNoVertex) product.set_edge(from, l, id_of(fx, fy));
      Vertex bx = g1.bwd(x, l), by = g2.bwd(y, l);
      if (bx != kNoVertex && by != kNoVertex) id_of(bx, by);  // edge added when processed
    }
  }
  return StallingsAutomaton::normalize(h1.alphabet(), product, start);
}

StallingsAutomaton subgroup_automaton(const Alphabet& a, std::span<const Word> generators) {
  return GraphBuilder::flower(a, generators).fold();
}

StallingsAutomaton subgroup_automaton(const Alphabet& a,
                                      std::initializer_list<const char*> generators) {
  std::vector<Word> gens;
  for (const char* text : generators) gens.push_back(parse_word(a, text));
  return subgroup_automaton(a, gens);
}

// ---------------------------------------------------------------------------
// Coset automata

CosetAutomaton::CosetAutomaton(const StallingsAutomaton& k, const Word& x)
    : alphabet_(k.alphabet()), graph_(k.graph()), accept_(k.base()), tail_length_(0) {
  if (x.max_letter() > alphabet_.size())
    throw std::invalid_argument("coset representative uses a letter outside the alphabet");
  Vertex v = k.base();
  const auto& ls = x.letters();
  std::size_t i = 0;
  for (; i < ls.size(); ++i) {
    Vertex w = graph_.step(v, ls[i]);
    if (w == kNoVertex) break;
    v = w;
  }
  // Unread suffix becomes a fresh simple path.  It stays deterministic: the
  // branch vertex had no edge with this label, and x is reduced.
  for (; i < ls.size(); ++i) {
    Vertex w = graph_.add_vertex();
    graph_.set_step(v, ls[i], w);
    v = w;
    ++tail_length_;
  }
  accept_ = v;
}

bool CosetAutomaton::member(const Word& w) const {
  if (w.max_letter() > alphabet_.size())
    throw std::invalid_argument("word uses a letter outside the automaton's alphabet");
  return graph_.walk(base(), w) == accept_;
}

void CosetAutomaton::write_dot(std::ostream& os, const std::string& name) const {
  write_dot_graph(os, name, alphabet_, graph_, base(), accept_);
}

std::optional<Word> coset_intersect(const CosetAutomaton& c1, const CosetAutomaton& c2) {
  if (c1.alphabet() != c2.alphabet())
    throw std::invalid_argument("coset_intersect: alphabet mismatch");
  const int A = c1.alphabet().size();
  const EdgeTable& g1 = c1.graph();
  const EdgeTable& g2 = c2.graph();

  std::unordered_map<std::uint64_t, Vertex> ids;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<std::pair<Vertex, Letter>> parent;  // (previous pair id, letter read)
  auto id_of = [&](Vertex x, Vertex y) -> std::pair<Vertex, bool> {
    auto [it, fresh] = ids.try_emplace(pair_key(x, y), static_cast<Vertex>(pairs.size()));
    if (fresh) {
      pairs.emplace_back(x, y);
      parent.emplace_back(kNoVertex, 0);
    }
    return {it->second, fresh};
  };

  auto [start, ignored] = id_of(c1.base(), c2.base());
  const std::uint64_t goal = pair_key(c1.accept(), c2.accept());
  // BFS in letter order (+a, -a, +b, -b, ...) so the returned representative
  // is the shortest, first in letter order.
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    if (pair_key(pairs[head].first, pairs[head].second) == goal) {
      std::vector<Letter> rev;
      Vertex at = static_cast<Vertex>(head);
      while (at != start) {
        rev.push_back(parent[at].second);
        at = parent[at].first;
      }
      std::reverse(rev.begin(), rev.end());
      return Word::reduce(rev);
    }
    auto [x, y] = pairs[head];
    for (int l = 1; l <= A; ++l) {
      for (Letter sl : {static_cast<Letter>(l), static_cast<Letter>(-l)}) {
        Vertex nx = g1.step(x, sl), ny = g2.step(y, sl);
        if (nx == kNoVertex || ny == kNoVertex) continue;
        auto [nid, fresh] = id_of(nx, ny);
        if (fresh) parent[nid] = {static_cast<Vertex>(head), sl};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rational product-set membership (saturation)

namespace {

struct SilentMachine {
  int alpha;
  EdgeTable graph;                                // disjoint union of the factors
  Vertex start = 0, final = 0;
  std::vector<std::unordered_set<Vertex>> eps;    // silent transitions

  void add_eps(Vertex p, Vertex q) {
    if (p != q) eps[p].insert(q);
  }

  std::vector<Vertex> closure(const std::vector<Vertex>& seed) const {
    std::vector<bool> in(graph.vertex_count(), false);
    std::vector<Vertex> out;
    std::deque<Vertex> q;
    for (Vertex v : seed)
      if (!in[v]) {
        in[v] = true;
        out.push_back(v);
        q.push_back(v);
      }
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      for (Vertex w : eps[v])
        if (!in[w]) {
          in[w] = true;
          out.push_back(w);
          q.push_back(w);
        }
    }
    return out;
  }

  // Adds a silent transition p -> q whenever p -a-> r =eps*=> s -a^-1-> q,
  // iterated to a fixed point.
  void saturate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Vertex p = 0; p < graph.vertex_count(); ++p) {
        for (int l = 1; l <= alpha; ++l) {
          for (Letter sl : {static_cast<Letter>(l), static_cast<Letter>(-l)}) {
            Vertex r = graph.step(p, sl);
            if (r == kNoVertex) continue;
            for (Vertex s : closure({r})) {
              Vertex q = graph.step(s, -sl);
              if (q == kNoVertex || q == p) continue;
              if (eps[p].insert(q).second) changed = true;
            }
          }
        }
      }
    }
  }

  bool accepts(const Word& u) const {
    std::vector<Vertex> states = closure({start});
    for (Letter l : u.letters()) {
      std::vector<Vertex> next;
      for (Vertex v : states) {
        Vertex w = graph.step(v, l);
        if (w != kNoVertex) next.push_back(w);
      }
      states = closure(next);
      if (states.empty()) return false;
    }
    return std::find(states.begin(), states.end(), final) != states.end();
  }
};

SilentMachine concatenate(std::span<const CosetAutomaton> factors) {
  if (factors.empty()) throw std::invalid_argument("benois_member: no factors");
  const Alphabet& a = factors.front().alphabet();
  SilentMachine m;
  m.alpha = a.size();
  m.graph = EdgeTable(m.alpha);
  Vertex offset = 0;
  Vertex prev_accept = kNoVertex;
  for (const CosetAutomaton& f : factors) {
    if (f.alphabet() != a) throw std::invalid_argument("benois_member: alphabet mismatch");
    for (std::size_t v = 0; v < f.graph().vertex_count(); ++v) m.graph.add_vertex();
    for (Vertex v = 0; v < f.graph().vertex_count(); ++v)
      for (int l = 1; l <= m.alpha; ++l) {
        Vertex w = f.graph().fwd(v, l);
        if (w != kNoVertex) m.graph.set_edge(offset + v, l, offset + w);
      }
    m.eps.resize(m.graph.vertex_count());
    if (prev_accept != kNoVertex) m.add_eps(prev_accept, offset + f.base());
    prev_accept = offset + f.accept();
    offset = static_cast<Vertex>(m.graph.vertex_count());
  }
  m.start = factors.front().base();
  m.final = prev_accept;
  return m;
}

}  // namespace

bool benois_member(std::span<const CosetAutomaton> factors, const Word& u) {
  SilentMachine m = concatenate(factors);
  m.saturate();
  return m.accepts(u);
}

bool benois_member(std::span<const StallingsAutomaton> factors, const Word& u) {
  std::vector<CosetAutomaton> cosets;
  cosets.reserve(factors.size());
  for (const StallingsAutomaton& f : factors) cosets.emplace_back(f, Word{});
  return benois_member(cosets, u);
}

}  // namespace fg
