#pragma once

#include <functional>

#include <boost/multiprecision/cpp_int.hpp>

namespace fg::bounds {

// Exact integer arithmetic throughout: the nilpotent bound is exponential in
// the class and must not overflow.
using Int = boost::multiprecision::cpp_int;

// Intersection rank bounds in a free group, for subgroup ranks n1, n2 >= 1.
Int howson_bound(const Int& n1, const Int& n2);         // 2 n1 n2 - n1 - n2 + 1
Int hanna_neumann_bound(const Int& n1, const Int& n2);  // 2 (n1-1)(n2-1) + 1
Int hnc_bound(const Int& n1, const Int& n2);            // (n1-1)(n2-1) + 1

// Rank of a finite index subgroup, index m in a group of rank rk.
Int schreier_bound(const Int& m, const Int& rk);           // m * rk
Int improved_schreier_bound(const Int& m, const Int& rk);  // m (rk - 1) + 1

// Intersection bound in a finite extension of index m, given a bound
// function xi for the finite-index subgroup: xi(m(n1-1)+1, m(n2-1)+1) + m-1.
// The composition point is explicit; all the closed forms below arise by
// plugging a concrete xi into it.
using RankBoundFn = std::function<Int(const Int&, const Int&)>;
Int finite_extension_bound(const RankBoundFn& xi, const Int& n1, const Int& n2, const Int& m);

// Virtually free: free subgroup of index m.  m^2 (n1-1)(n2-1) + m.
Int vfree_bound(const Int& n1, const Int& n2, const Int& m);

// Zakharov's bound 6 k (n1-1)(n2-1) + 1, with k either the maximal order of
// the trace of a finite subgroup on the product set H1 H2 (first form) or the
// free-subgroup index m (second form).
Int zakharov_bound(const Int& k, const Int& n1, const Int& n2);

// True iff the virtually free bound beats Zakharov's second form; for
// noncyclic n1, n2 this holds exactly when m < 6.
bool vfree_beats_zakharov(const Int& n1, const Int& n2, const Int& m);

// Virtually nilpotent: nilpotent subgroup of class n and index m, with
// p = min(n1, n2) >= 2.  Computed as k + k^2 + ... + k^n + m - 1 for
// k = m(p-1)+1, which agrees with the closed form
// (k^{n+1} - k) / (k - 1) + m - 1.
Int vnilpotent_bound(const Int& n1, const Int& n2, const Int& m, const Int& n);

// Virtually polycyclic: polycyclic subgroup of polycyclic rank prk and index
// m.  prk + m - 1 (independent of n1, n2).
Int vpolycyclic_bound(const Int& prk, const Int& m);

// Free product of strongly polycyclic groups with maximal Hirsch number M:
// M (n1-1)(n2-1) + M.
Int polycyclic_free_product_bound(const Int& M, const Int& n1, const Int& n2);

// Fundamental group of a finite graph of groups with virtually polycyclic
// vertex groups and finite edge groups: free-product constant M', finite
// index m.  M' m^2 (n1-1)(n2-1) + M' + m - 1; bounded above by the coarser
// M(n1-1)(n2-1)+M with M = M' m^2.
Int graph_of_groups_bound(const Int& Mp, const Int& m, const Int& n1, const Int& n2);

}  // namespace fg::bounds
