#include "fg/bounds.hpp"

#include <stdexcept>

namespace fg::bounds {

namespace {

void require_positive(const Int& x, const char* name) {
  if (x < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
}

}  // namespace

Int howson_bound(const Int& n1, const Int& n2) {
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  return 2 * n1 * n2 - n1 - n2 + 1;
}

Int hanna_neumann_bound(const Int& n1, const Int& n2) {
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  return 2 * (n1 - 1) * (n2 - 1) + 1;
}

Int hnc_bound(const Int& n1, const Int& n2) {
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  return (n1 - 1) * (n2 - 1) + 1;
}

Int schreier_bound(const Int& m, const Int& rk) {
  require_positive(m, "m");
  require_positive(rk, "rk");
  return m * rk;
}

Int improved_schreier_bound(const Int& m, const Int& rk) {
  require_positive(m, "m");
  require_positive(rk, "rk");
  return m * (rk - 1) + 1;
}

Int finite_extension_bound(const RankBoundFn& xi, const Int& n1, const Int& n2, const Int& m) {
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  require_positive(m, "m");
  return xi(m * (n1 - 1) + 1, m * (n2 - 1) + 1) + m - 1;
}

Int vfree_bound(const Int& n1, const Int& n2, const Int& m) {
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  require_positive(m, "m");
  return m * m * (n1 - 1) * (n2 - 1) + m;
}

Int zakharov_bound(const Int& k, const Int& n1, const Int& n2) {
  require_positive(k, "k");
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  return 6 * k * (n1 - 1) * (n2 - 1) + 1;
}

bool vfree_beats_zakharov(const Int& n1, const Int& n2, const Int& m) {
  return vfree_bound(n1, n2, m) < zakharov_bound(m, n1, n2);
}

Int vnilpotent_bound(const Int& n1, const Int& n2, const Int& m, const Int& n) {
  require_positive(m, "m");
  require_positive(n, "n");
  Int p = n1 < n2 ? n1 : n2;
  if (p < 2) throw std::invalid_argument("vnilpotent_bound needs min(n1, n2) >= 2");
  const Int k = m * (p - 1) + 1;
  Int sum = 0, power = 1;
  for (Int i = 1; i <= n; ++i) {
    power *= k;
    sum += power;
  }
  return sum + m - 1;
}

Int vpolycyclic_bound(const Int& prk, const Int& m) {
  require_positive(prk, "prk");
  require_positive(m, "m");
  return prk + m - 1;
}

Int polycyclic_free_product_bound(const Int& M, const Int& n1, const Int& n2) {
  require_positive(M, "M");
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  return M * (n1 - 1) * (n2 - 1) + M;
}

Int graph_of_groups_bound(const Int& Mp, const Int& m, const Int& n1, const Int& n2) {
  require_positive(Mp, "M'");
  require_positive(m, "m");
  require_positive(n1, "n1");
  require_positive(n2, "n2");
  return Mp * m * m * (n1 - 1) * (n2 - 1) + Mp + m - 1;
}

}  // namespace fg::bounds
