#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gonogo/pauli.hpp"

namespace gonogo {

/// Spatial-orbital integrals in chemists' notation, two-body tensor stored
/// with the full 8-fold permutation symmetry compressed out.
class MolecularIntegrals {
public:
  MolecularIntegrals() = default;
  MolecularIntegrals(int n_orb, int n_elec, double e_core)
      : n_orb_(n_orb), n_elec_(n_elec), e_core_(e_core),
        h_(std::size_t(n_orb) * n_orb, 0.0) {
    if (n_orb < 1)
      throw std::invalid_argument("MolecularIntegrals: n_orb must be positive");
    if (n_elec < 0 || n_elec > 2 * n_orb)
      throw std::invalid_argument("MolecularIntegrals: bad electron count");
    std::size_t np = pair_count(n_orb);
    eri_.assign(np * (np + 1) / 2, 0.0);
  }

  int n_orb() const { return n_orb_; }
  int n_elec() const { return n_elec_; }
  double e_core() const { return e_core_; }
  void set_e_core(double c) { e_core_ = c; }
  void set_n_elec(int ne) { n_elec_ = ne; }

  double h(int p, int q) const { return h_[std::size_t(p) * n_orb_ + q]; }
  void set_h(int p, int q, double v) {
    h_[std::size_t(p) * n_orb_ + q] = v;
    h_[std::size_t(q) * n_orb_ + p] = v;
  }

  /// (pq|rs), chemists' notation; any of the 8 equivalent index orders.
  double eri(int p, int q, int r, int s) const {
    return eri_[eri_index(p, q, r, s)];
  }
  void set_eri(int p, int q, int r, int s, double v) {
    eri_[eri_index(p, q, r, s)] = v;
  }

  static std::size_t pair_count(int n) {
    return std::size_t(n) * (n + 1) / 2;
  }

  std::size_t eri_index(int p, int q, int r, int s) const {
    auto pq = pair_index(p, q);
    auto rs = pair_index(r, s);
    if (pq < rs)
      std::swap(pq, rs);
    return pq * (pq + 1) / 2 + rs;
  }

private:
  static std::size_t pair_index(int p, int q) {
    if (p < q)
      std::swap(p, q);
    return std::size_t(p) * (p + 1) / 2 + q;
  }

  int n_orb_ = 0;
  int n_elec_ = 0;
  double e_core_ = 0.0;
  std::vector<double> h_;
  std::vector<double> eri_;
};

/// Interleaved spin-orbital convention: qubit 2p is (p,α), 2p+1 is (p,β).
inline int spin_orbital_index(int spatial, int spin) {
  return 2 * spatial + spin;
}

// ---------------------------------------------------------------------------
// FCIDUMP I/O
// ---------------------------------------------------------------------------

/// Parse the standard FCIDUMP interchange format.  1-based indices with the
/// 0 sentinel: all zero → core energy, k=l=0 → h_ij, all nonzero → (ij|kl).
inline MolecularIntegrals parse_fcidump(std::istream &is) {
  std::string text((std::istreambuf_iterator<char>(is)),
                   std::istreambuf_iterator<char>());

  // Header runs until &END or a lone '/'.
  std::size_t body_pos = std::string::npos;
  std::string header;
  {
    auto amp = text.find("&END");
    if (amp != std::string::npos) {
      header = text.substr(0, amp);
      body_pos = amp + 4;
    } else {
      auto slash = text.find('/');
      if (slash == std::string::npos)
        throw std::runtime_error("FCIDUMP: missing &END or / terminator");
      header = text.substr(0, slash);
      body_pos = slash + 1;
    }
  }
  if (header.find("&FCI") == std::string::npos)
    throw std::runtime_error("FCIDUMP: missing &FCI header");

  auto read_int_field = [&](const std::string &key) -> long {
    auto pos = header.find(key);
    if (pos == std::string::npos)
      return -1;
    pos += key.size();
    while (pos < header.size() &&
           (header[pos] == '=' || std::isspace(static_cast<unsigned char>(header[pos]))))
      ++pos;
    return std::strtol(header.c_str() + pos, nullptr, 10);
  };

  long norb = read_int_field("NORB");
  long nelec = read_int_field("NELEC");
  if (norb < 1)
    throw std::runtime_error("FCIDUMP: malformed or missing NORB");
  if (nelec < 0)
    throw std::runtime_error("FCIDUMP: malformed or missing NELEC");

  MolecularIntegrals ints(static_cast<int>(norb), static_cast<int>(nelec), 0.0);

  // Track first-seen values so duplicate inconsistent entries are rejected.
  std::map<std::array<int, 4>, double> seen;
  std::istringstream body(text.substr(body_pos));
  double v;
  int i, j, k, l;
  while (body >> v >> i >> j >> k >> l) {
    for (int idx : {i, j, k, l})
      if (idx < 0 || idx > norb)
        throw std::runtime_error("FCIDUMP: orbital index out of range");
    std::array<int, 4> key{i, j, k, l};
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (std::abs(it->second - v) > 1e-10)
        throw std::runtime_error("FCIDUMP: duplicate entry with inconsistent value");
      continue;
    }
    seen.emplace(key, v);
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      ints.set_e_core(v);
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0)
        throw std::runtime_error("FCIDUMP: bad one-body index pattern");
      ints.set_h(i - 1, j - 1, v);
    } else if (i != 0 && j != 0 && k != 0 && l != 0) {
      ints.set_eri(i - 1, j - 1, k - 1, l - 1, v);
    } else {
      throw std::runtime_error("FCIDUMP: bad index pattern");
    }
  }
  return ints;
}

inline MolecularIntegrals parse_fcidump(const std::string &text) {
  std::istringstream ss(text);
  return parse_fcidump(ss);
}

/// Canonical FCIDUMP: sorted representatives, 17 significant digits.
inline void write_fcidump(std::ostream &os, const MolecularIntegrals &ints) {
  int n = ints.n_orb();
  os << "&FCI NORB=" << n << ",NELEC=" << ints.n_elec() << ",MS2=0,\n";
  os << " ORBSYM=";
  for (int p = 0; p < n; ++p)
    os << "1,";
  os << "\n ISYM=1,\n&END\n";
  char buf[48];
  auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%24.16e", v);
    os << buf << " " << i << " " << j << " " << k << " " << l << "\n";
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s)
            continue;
          double v = ints.eri(p, q, r, s);
          if (v != 0.0)
            emit(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      double v = ints.h(p, q);
      if (v != 0.0)
        emit(v, p + 1, q + 1, 0, 0);
    }
  emit(ints.e_core(), 0, 0, 0, 0);
}

inline std::string write_fcidump(const MolecularIntegrals &ints) {
  std::ostringstream ss;
  write_fcidump(ss, ints);
  return ss.str();
}

// ---------------------------------------------------------------------------
// Jordan–Wigner mapping
// ---------------------------------------------------------------------------

namespace detail {

/// Complex-coefficient Pauli accumulator used while multiplying ladder
/// operators.  Keyed by (x,z) masks; std::map keeps iteration deterministic.
using CPauliMap = std::map<std::pair<std::uint64_t, std::uint64_t>, cplx>;

struct CTerm {
  cplx coeff;
  std::uint64_t x, z;
};

/// Product of two Pauli words in the (x,z) encoding.  Tracks the phase via
/// the i^{|x∧z|} X^x Z^z decomposition and the Z-past-X anticommutations.
inline CTerm mul(const CTerm &a, const CTerm &b) {
  std::uint64_t x = a.x ^ b.x;
  std::uint64_t z = a.z ^ b.z;
  int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) -
          std::popcount(x & z) + 2 * std::popcount(a.z & b.x);
  static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {a.coeff * b.coeff * i_pow[((k % 4) + 4) % 4], x, z};
}

/// Jordan–Wigner ladder operator on qubit j:
///   a_j  = Z_0…Z_{j-1} (X_j + iY_j)/2,   a†_j with −i.
inline std::array<CTerm, 2> ladder(int j, bool dagger) {
  std::uint64_t pref = (std::uint64_t{1} << j) - 1;
  std::uint64_t ej = std::uint64_t{1} << j;
  cplx iy = dagger ? cplx{0.0, -0.5} : cplx{0.0, 0.5};
  return {CTerm{cplx{0.5, 0.0}, ej, pref}, CTerm{iy, ej, pref | ej}};
}

inline void accumulate_product(CPauliMap &acc, cplx coeff,
                               const std::vector<std::array<CTerm, 2>> &ops) {
  // Expand the product of 2-term factors.
  std::vector<CTerm> cur{CTerm{coeff, 0, 0}};
  for (const auto &op : ops) {
    std::vector<CTerm> next;
    next.reserve(cur.size() * 2);
    for (const auto &t : cur)
      for (const auto &f : op)
        next.push_back(mul(t, f));
    cur = std::move(next);
  }
  for (const auto &t : cur)
    acc[{t.x, t.z}] += t.coeff;
}

} // namespace detail

/// Map the second-quantized molecular Hamiltonian
///   H = e_core + Σ h_pq a†_{pσ} a_{qσ}
///            + ½ Σ (pq|rs) a†_{pσ} a†_{rτ} a_{sτ} a_{qσ}
/// onto qubits with the interleaved spin convention.  Output is simplified
/// and has real coefficients.
inline PauliSum jordan_wigner(const MolecularIntegrals &ints) {
  int n = ints.n_orb();
  int nq = 2 * n;
  if (nq > 63)
    throw std::invalid_argument("jordan_wigner: too many spin-orbitals");
  detail::CPauliMap acc;
  acc[{0, 0}] = cplx{ints.e_core(), 0.0};

  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double hpq = ints.h(p, q);
      if (hpq == 0.0)
        continue;
      for (int s = 0; s < 2; ++s) {
        std::vector<std::array<detail::CTerm, 2>> ops{
            detail::ladder(spin_orbital_index(p, s), true),
            detail::ladder(spin_orbital_index(q, s), false)};
        detail::accumulate_product(acc, cplx{hpq, 0.0}, ops);
      }
    }

  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double g = ints.eri(p, q, r, s);
          if (g == 0.0)
            continue;
          for (int sig = 0; sig < 2; ++sig)
            for (int tau = 0; tau < 2; ++tau) {
              int P = spin_orbital_index(p, sig);
              int R = spin_orbital_index(r, tau);
              int S = spin_orbital_index(s, tau);
              int Q = spin_orbital_index(q, sig);
              if (P == R || S == Q)
                continue; // a†a† or aa on the same mode vanishes
              std::vector<std::array<detail::CTerm, 2>> ops{
                  detail::ladder(P, true), detail::ladder(R, true),
                  detail::ladder(S, false), detail::ladder(Q, false)};
              detail::accumulate_product(acc, cplx{0.5 * g, 0.0}, ops);
            }
        }

  PauliSum out(nq);
  for (const auto &[key, c] : acc) {
    if (std::abs(c.imag()) > 1e-10)
      throw std::runtime_error("jordan_wigner: non-Hermitian residue");
    if (std::abs(c.real()) < 1e-12)
      continue;
    out.terms.emplace_back(c.real(), PauliWord(nq, key.first, key.second));
  }
  return simplify(out);
}

// ---------------------------------------------------------------------------
// Closed forms on the full Fock space and on determinants
// ---------------------------------------------------------------------------

/// E_∞ = Tr(H)/2^n over the full Fock space, directly from the integrals.
///
/// Closed form: with Tr(a†_P a_Q)/2^n = δ_PQ/2 and
/// Tr(a†_P a†_R a_S a_Q)/2^n = (δ_PQ δ_RS − δ_PS δ_RQ)/4 for P≠R, summing
/// the spin choices gives
///   E_∞ = e_core + Σ_p h_pp + ½ Σ_{p≠r} [(pp|rr) − ½(pr|rp)]
///        + ¼ Σ_p (pp|pp).
inline double fock_space_trace_mean(const MolecularIntegrals &ints) {
  int n = ints.n_orb();
  double e = ints.e_core();
  for (int p = 0; p < n; ++p)
    e += ints.h(p, p);
  for (int p = 0; p < n; ++p)
    for (int r = 0; r < n; ++r) {
      if (p == r) {
        e += 0.25 * ints.eri(p, p, p, p);
      } else {
        e += 0.5 * (ints.eri(p, p, r, r) - 0.5 * ints.eri(p, r, r, p));
      }
    }
  return e;
}

/// Closed-shell determinant energy in the MO basis:
///   e_core + 2Σ_i h_ii + Σ_ij [2(ii|jj) − (ij|ji)].
inline double determinant_energy(const MolecularIntegrals &ints,
                                 const std::vector<int> &occupied) {
  if (ints.n_elec() % 2 != 0)
    throw std::invalid_argument("determinant_energy: closed shell only");
  double e = ints.e_core();
  for (int i : occupied)
    e += 2.0 * ints.h(i, i);
  for (int i : occupied)
    for (int j : occupied)
      e += 2.0 * ints.eri(i, i, j, j) - ints.eri(i, j, j, i);
  return e;
}

namespace detail {

/// Antisymmetrized spin-orbital element ⟨PQ‖RS⟩ assembled on the fly from
/// chemists' (pr|qs) integrals; capital indices are interleaved spin-orbitals.
inline double antisym_element(const MolecularIntegrals &ints, int P, int Q,
                              int R, int S) {
  auto spat = [](int X) { return X / 2; };
  auto spin = [](int X) { return X % 2; };
  double direct = 0.0, exch = 0.0;
  if (spin(P) == spin(R) && spin(Q) == spin(S))
    direct = ints.eri(spat(P), spat(R), spat(Q), spat(S));
  if (spin(P) == spin(S) && spin(Q) == spin(R))
    exch = ints.eri(spat(P), spat(S), spat(Q), spat(R));
  return direct - exch;
}

} // namespace detail

/// Exact ⟨H²⟩−⟨H⟩² of the closed-shell determinant:
/// σ² = Σ_{ia}|f_ai|² + Σ_{I<J,A<B}|⟨IJ‖AB⟩|² over spin-orbitals.
/// The singles term vanishes for converged canonical orbitals but is kept so
/// the formula is exact for any determinant.
inline double determinant_variance(const MolecularIntegrals &ints,
                                   const std::vector<int> &occupied) {
  if (ints.n_elec() % 2 != 0)
    throw std::invalid_argument("determinant_variance: closed shell only");
  int n = ints.n_orb();
  std::vector<bool> occ(n, false);
  for (int i : occupied)
    occ[i] = true;

  // Closed-shell Fock matrix in the spatial basis.
  std::vector<double> fock(std::size_t(n) * n, 0.0);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double f = ints.h(p, q);
      for (int j : occupied)
        f += 2.0 * ints.eri(p, q, j, j) - ints.eri(p, j, j, q);
      fock[std::size_t(p) * n + q] = f;
    }

  double singles = 0.0;
  for (int i : occupied)
    for (int a = 0; a < n; ++a) {
      if (occ[a])
        continue;
      double f = fock[std::size_t(a) * n + i];
      singles += 2.0 * f * f; // two spins
    }

  // Spin-orbital doubles.
  std::vector<int> occ_so, virt_so;
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < 2; ++s)
      (occ[p] ? occ_so : virt_so).push_back(spin_orbital_index(p, s));

  double doubles = 0.0;
  for (std::size_t ii = 0; ii < occ_so.size(); ++ii)
    for (std::size_t jj = ii + 1; jj < occ_so.size(); ++jj)
      for (std::size_t aa = 0; aa < virt_so.size(); ++aa)
        for (std::size_t bb = aa + 1; bb < virt_so.size(); ++bb) {
          double g = detail::antisym_element(ints, occ_so[ii], occ_so[jj],
                                             virt_so[aa], virt_so[bb]);
          doubles += g * g;
        }
  return singles + doubles;
}

/// Qubit-space occupation mask of the closed-shell determinant.
inline std::uint64_t determinant_mask(const std::vector<int> &occupied) {
  std::uint64_t m = 0;
  for (int i : occupied) {
    m |= std::uint64_t{1} << spin_orbital_index(i, 0);
    m |= std::uint64_t{1} << spin_orbital_index(i, 1);
  }
  return m;
}

/// Lowest n_elec/2 spatial orbitals.
inline std::vector<int> lowest_occupation(int n_elec) {
  if (n_elec % 2 != 0)
    throw std::invalid_argument("lowest_occupation: closed shell only");
  std::vector<int> occ(n_elec / 2);
  for (int i = 0; i < n_elec / 2; ++i)
    occ[i] = i;
  return occ;
}

} // namespace gonogo
