// Shared molecular fixtures built through the SCF front end.
#pragma once

#include <map>

#include "gonogo/scf.hpp"

namespace fixtures {

using namespace gonogo;

inline const std::vector<std::pair<double, double>> &sto3g() {
  static auto basis = load_basis(std::string(GONOGO_DATA_DIR) + "/sto3g.basis");
  return basis;
}

struct Chain {
  AOIntegrals ao;
  ScfResult scf;
  MolecularIntegrals mo;
  std::vector<int> occ;
};

/// Memoized H-chain pipeline output for (n_atoms, spacing).
inline const Chain &hchain(int n_atoms, double spacing) {
  static std::map<std::pair<int, double>, Chain> cache;
  auto key = std::make_pair(n_atoms, spacing);
  auto it = cache.find(key);
  if (it == cache.end()) {
    Geometry g = build_hchain(n_atoms, spacing);
    Chain c;
    c.ao = ao_integrals(g, hydrogen_shells(g, sto3g()));
    c.scf = rhf(c.ao, n_atoms);
    c.mo = mo_transform(c.ao, c.scf.C, n_atoms);
    c.occ = lowest_occupation(n_atoms);
    it = cache.emplace(key, std::move(c)).first;
  }
  return it->second;
}

inline const Chain &h2() { return hchain(2, 1.4); }
inline const Chain &h4() { return hchain(4, 1.8); }

} // namespace fixtures
