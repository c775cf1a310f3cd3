#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "fg/bounds.hpp"
#include "fg/extension.hpp"
#include "fg/stallings.hpp"

namespace fg {

// Coset representative h_q together with how it was assembled from the
// generators (signed 1-based generator indices).
struct RepWitness {
  int q = 0;
  ExtensionElement element;
  std::vector<int> witness;
};

// Finitely generated subgroup H of a free-by-finite group, stored through its
// standard decomposition: the projection image Q_H, one representative per
// coset of K = H ∩ F, and the Stallings automaton of K (computed from the
// Schreier generators).  Immutable after close_subgroup.
class SubgroupHandle {
 public:
  const std::shared_ptr<const ExtensionData>& data() const { return data_; }
  const std::vector<ExtensionElement>& generators() const { return generators_; }
  const std::vector<int>& q_image() const { return qh_; }  // sorted
  bool has_q(int q) const;
  const RepWitness& rep(int q) const;
  const StallingsAutomaton& k_automaton() const { return k_aut_; }
  std::vector<Word> k_basis() const { return k_aut_.basis(); }

  // |Q_H| = [H : K]
  int coset_count() const { return static_cast<int>(qh_.size()); }
  bool inside_free_part() const { return qh_.size() == 1; }

  // rk(K) + (number of nonidentity cosets); exact when H lies inside F
  std::int64_t rank_upper_bound() const;

 private:
  SubgroupHandle(std::shared_ptr<const ExtensionData> data,
                 std::vector<ExtensionElement> generators, std::vector<int> qh,
                 std::vector<RepWitness> reps, StallingsAutomaton k_aut);

  std::shared_ptr<const ExtensionData> data_;
  std::vector<ExtensionElement> generators_;
  std::vector<int> qh_;
  std::vector<RepWitness> reps_;  // indexed by position in qh_
  StallingsAutomaton k_aut_;

  friend SubgroupHandle close_subgroup(std::shared_ptr<const ExtensionData>,
                                       std::vector<ExtensionElement>);
};

// BFS over the projection image fixes the coset representatives, then the
// Schreier generators h_q g h_{q pi(g)}^-1 give K = H ∩ F as a folded
// automaton.
SubgroupHandle close_subgroup(std::shared_ptr<const ExtensionData> data,
                              std::vector<ExtensionElement> generators);

// x in H iff pi(x) lies in Q_H and the free part of x h_{pi(x)}^-1 is
// accepted by the automaton of K.
bool submember(const SubgroupHandle& h, const ExtensionElement& x);

// Writes x as a product of K-basis elements and one coset representative;
// the caller can re-multiply the factors to confirm.  nullopt iff
// !submember(h, x).
struct SubgroupExpression {
  std::vector<int> k_factors;  // signed 1-based indices into k_basis()
  int rep_q = 0;               // trailing representative h_q
};
std::optional<SubgroupExpression> express_in_subgroup(const SubgroupHandle& h,
                                                      const ExtensionElement& x);

// Per-coset outcome of the intersection procedure.
struct LayerStatus {
  int q = 0;
  bool nonempty = false;
  std::optional<Word> representative;           // u with u in K1 and u d in K2
  std::optional<ExtensionElement> generator;    // (u, 0) h1_q
};

struct IntersectionCertificate {
  std::vector<Word> k_basis;         // basis of K = K1 ∩ K2
  std::vector<LayerStatus> layers;   // nonidentity elements of Q_H1 ∩ Q_H2
  std::int64_t rank_k = 0;
  std::int64_t nonempty_layers = 0;
  std::int64_t rank_upper_bound = 0;  // rank_k + nonempty_layers
  bool exact = false;                 // true when every layer is empty
};

struct SubgroupIntersection {
  SubgroupHandle subgroup;
  IntersectionCertificate certificate;
};

// Intersection of two subgroups given by handles over the same extension:
// K = K1 ∩ K2 plus one generator per nonempty coset layer, each layer decided
// by a coset intersection in F.
SubgroupIntersection subintersect(const SubgroupHandle& h1, const SubgroupHandle& h2);

// Comparison of the certified intersection rank bound against the closed-form
// virtually free bound with n_j = generator counts and m = |Q|.
struct IntersectionBoundCheck {
  std::int64_t n1 = 0, n2 = 0, m = 0;
  bounds::Int vfree_value;
  std::int64_t observed = 0;
  bool skipped_cyclic = false;  // paper-relevant cases need n1, n2 >= 2
  bool pass = false;
};
IntersectionBoundCheck check_intersection_bound(const SubgroupHandle& h1,
                                                const SubgroupHandle& h2,
                                                const IntersectionCertificate& cert);

// Membership of x in the product set H1 H2, decided on the free layer:
// x in K1 h1_{q1} K2 h2_{q2} iff the free part of x (h1_{q1} h2_{q2})^-1 lies
// in K1 . (h1_{q1} K2 h1_{q1}^-1), a rational product-set query.
bool product_member(const SubgroupHandle& h1, const SubgroupHandle& h2,
                    const ExtensionElement& x);

// Finite subgroups discovered by bounded search (torsion elements with free
// part of length <= max_free_len, closed with the |Q| cap) and the size of
// their trace on H1 H2.
struct FiniteSubgroupTrace {
  std::vector<ExtensionElement> elements;
  std::int64_t in_product = 0;
};

struct ZakharovReport {
  std::vector<FiniteSubgroupTrace> subgroups;
  std::int64_t n_max = 1;      // max |P ∩ H1 H2| over the discovered P
  int free_len_budget = 0;     // the search horizon; n_max is a lower estimate
  bounds::Int first_bound;     // 6 n_max (n1-1)(n2-1) + 1
  bounds::Int second_bound;    // 6 m (n1-1)(n2-1) + 1
  bounds::Int vfree_value;     // m^2 (n1-1)(n2-1) + m
};
ZakharovReport zakharov_trace(const SubgroupHandle& h1, const SubgroupHandle& h2,
                              int max_free_len = 2);

}  // namespace fg
