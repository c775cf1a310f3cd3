#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "fg/words.hpp"

namespace fg {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = 0xFFFFFFFFu;

// Deterministic involutive labeled graph over positive letters 1..A.  Each
// edge (p, a, q) is traversed forwards when reading a and backwards when
// reading a^-1; only the positive orientation is stored.
class EdgeTable {
 public:
  EdgeTable() : alpha_(0) {}
  explicit EdgeTable(int alphabet_size, std::size_t vertices = 0);

  Vertex add_vertex();
  std::size_t vertex_count() const { return fwd_.size() / (alpha_ ? alpha_ : 1); }
  int alphabet_size() const { return alpha_; }

  Vertex fwd(Vertex v, int a) const { return fwd_[v * alpha_ + a - 1]; }
  Vertex bwd(Vertex v, int a) const { return bwd_[v * alpha_ + a - 1]; }
  // Follows a signed letter; kNoVertex when the edge is absent.
  Vertex step(Vertex v, Letter l) const { return l > 0 ? fwd(v, l) : bwd(v, -l); }

  // Adds edge (p, a, q); throws if it would break determinism or
  // co-determinism.
  void set_edge(Vertex p, int a, Vertex q);
  // Adds the edge read by signed letter l from `from` to `to`.
  void set_step(Vertex from, Letter l, Vertex to);
  void clear_edge(Vertex p, int a);

  std::size_t edge_count() const;

  // Walks a reduced word; kNoVertex if the path leaves the graph.
  Vertex walk(Vertex from, const Word& w) const;

 private:
  int alpha_;
  std::vector<Vertex> fwd_;
  std::vector<Vertex> bwd_;
};

// Rooted, folded, trimmed automaton of a finitely generated subgroup of the
// free group on its alphabet.  Instances are canonically numbered (BFS from
// the base vertex, letters explored in the order a, a^-1, b, b^-1, ...), so
// equal subgroups compare equal vertex-for-vertex.  Immutable after
// construction.
class StallingsAutomaton {
 public:
  static StallingsAutomaton trivial(Alphabet a);

  const Alphabet& alphabet() const { return alphabet_; }
  Vertex base() const { return 0; }
  std::size_t vertex_count() const { return graph_.vertex_count(); }
  std::size_t edge_count() const { return graph_.edge_count(); }
  const EdgeTable& graph() const { return graph_; }

  // Generalized word problem: true iff w labels a base-to-base path.
  bool member(const Word& w) const;

  // e - v + 1; equals the size of any free basis.
  std::int64_t rank() const;

  // Free basis from the BFS spanning tree, one word per non-tree positive
  // edge, ordered by (source vertex, letter).
  std::vector<Word> basis() const;

  // Index in the ambient free group: the vertex count when the automaton is
  // complete, infinite (nullopt) otherwise.
  std::optional<std::int64_t> index() const;

  // Writes w as a product of basis elements (signed 1-based indices into
  // basis()); nullopt iff !member(w).
  std::optional<std::vector<int>> express_in_basis(const Word& w) const;

  // Deterministic byte encoding: vertex count then sorted positive edge
  // triples.  Two automata encode identically iff they represent the same
  // subgroup.
  std::string canonical_encoding() const;

  bool operator==(const StallingsAutomaton& other) const;
  bool operator!=(const StallingsAutomaton& other) const { return !(*this == other); }

  void write_dot(std::ostream& os, const std::string& name = "stallings") const;

 private:
  StallingsAutomaton(Alphabet a, EdgeTable g) : alphabet_(std::move(a)), graph_(std::move(g)) {}

  // Restricts to the base component, peels degree-<=1 non-base vertices, and
  // renumbers canonically.
  static StallingsAutomaton normalize(Alphabet a, const EdgeTable& g, Vertex base);

  Alphabet alphabet_;
  EdgeTable graph_;

  friend class GraphBuilder;
  friend StallingsAutomaton intersect(const StallingsAutomaton&, const StallingsAutomaton&);
  friend class CosetAutomaton;
};

// Mutable multigraph with involutive edges, the input of folding.  Petals,
// products and hand-built graphs all go through here.
class GraphBuilder {
 public:
  explicit GraphBuilder(Alphabet a);

  Vertex add_vertex();
  // Adds the (possibly parallel) edge read by signed letter l from p to q.
  void add_edge(Vertex p, Letter l, Vertex q);
  std::size_t vertex_count() const { return vertices_; }
  std::size_t edge_count() const { return edges_.size(); }

  // One petal per nontrivial generator, glued at the base vertex 0.
  static GraphBuilder flower(Alphabet a, std::span<const Word> generators);

  // Identifies edge pairs with equal labels leaving a common vertex until
  // none remain, then trims and canonicalizes.  The folding order is
  // irrelevant to the result; shuffle_seed randomizes it (used to exercise
  // confluence).
  StallingsAutomaton fold(std::optional<std::uint64_t> shuffle_seed = std::nullopt) const;

 private:
  Alphabet alphabet_;
  std::size_t vertices_ = 0;
  std::vector<std::tuple<Vertex, int, Vertex>> edges_;  // positive orientation
};

// fold(flower(generators)).
StallingsAutomaton subgroup_automaton(const Alphabet& a, std::span<const Word> generators);
StallingsAutomaton subgroup_automaton(const Alphabet& a, std::initializer_list<const char*> generators);

// Pullback: the automaton of the intersection of the two subgroups.
StallingsAutomaton intersect(const StallingsAutomaton& h1, const StallingsAutomaton& h2);

// Automaton of the right coset K·x: the subgroup automaton extended with a
// simple tail for the unread suffix of x.  Accepted reduced words are
// exactly the elements of the coset.
class CosetAutomaton {
 public:
  CosetAutomaton(const StallingsAutomaton& k, const Word& x);

  const Alphabet& alphabet() const { return alphabet_; }
  const EdgeTable& graph() const { return graph_; }
  Vertex base() const { return 0; }
  Vertex accept() const { return accept_; }
  std::size_t tail_length() const { return tail_length_; }

  bool member(const Word& w) const;

  void write_dot(std::ostream& os, const std::string& name = "coset") const;

 private:
  Alphabet alphabet_;
  EdgeTable graph_;
  Vertex accept_;
  std::size_t tail_length_;
};

// Shortest reduced word in the intersection of two cosets (BFS over the
// product, ties broken by letter order), or nullopt when the intersection is
// empty.
std::optional<Word> coset_intersect(const CosetAutomaton& c1, const CosetAutomaton& c2);

// Membership of the reduced word u in the product set L1 L2 ... Lk of
// subgroups/cosets: concatenates the automata with silent transitions and
// saturates them across cancelling letter pairs until closure.
bool benois_member(std::span<const CosetAutomaton> factors, const Word& u);
bool benois_member(std::span<const StallingsAutomaton> factors, const Word& u);

}  // namespace fg
