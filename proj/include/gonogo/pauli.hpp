#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gonogo/statevector.hpp"

namespace gonogo {

/// A tensor product of single-qubit Paulis, no coefficient.
/// Bit q of x_mask/z_mask refers to qubit q: X = x only, Z = z only, Y = both.
struct PauliWord {
  int n_qubits = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  PauliWord() = default;
  PauliWord(int n, std::uint64_t x, std::uint64_t z)
      : n_qubits(n), x_mask(x), z_mask(z) {}

  char letter(int q) const {
    bool x = x_mask >> q & 1u;
    bool z = z_mask >> q & 1u;
    if (x && z)
      return 'Y';
    if (x)
      return 'X';
    if (z)
      return 'Z';
    return 'I';
  }

  void set_letter(int q, char c) {
    std::uint64_t bit = std::uint64_t{1} << q;
    x_mask &= ~bit;
    z_mask &= ~bit;
    switch (c) {
    case 'I':
      break;
    case 'X':
      x_mask |= bit;
      break;
    case 'Y':
      x_mask |= bit;
      z_mask |= bit;
      break;
    case 'Z':
      z_mask |= bit;
      break;
    default:
      throw std::invalid_argument("PauliWord: letter must be one of I,X,Y,Z");
    }
  }

  int weight() const { return std::popcount(x_mask | z_mask); }
  bool is_identity() const { return (x_mask | z_mask) == 0; }

  bool operator==(const PauliWord &o) const {
    return n_qubits == o.n_qubits && x_mask == o.x_mask && z_mask == o.z_mask;
  }

  /// Convenience: build from strings like "Z0 Z1" or "I".
  static PauliWord parse(int n_qubits, const std::string &tokens);
  std::string str() const;
};

/// Real-weighted sum of Pauli words; Hermitian by construction.
struct PauliSum {
  int n_qubits = 0;
  std::vector<std::pair<double, PauliWord>> terms;

  PauliSum() = default;
  explicit PauliSum(int n) : n_qubits(n) {}

  void add(double coeff, const PauliWord &w) {
    if (w.n_qubits != n_qubits)
      throw std::invalid_argument("PauliSum: qubit count mismatch");
    terms.emplace_back(coeff, w);
  }

  std::size_t size() const { return terms.size(); }

  PauliSum scaled(double f) const {
    PauliSum out(n_qubits);
    out.terms = terms;
    for (auto &t : out.terms)
      t.first *= f;
    return out;
  }
};

inline PauliWord PauliWord::parse(int n_qubits, const std::string &tokens) {
  PauliWord w(n_qubits, 0, 0);
  std::istringstream ss(tokens);
  std::string tok;
  while (ss >> tok) {
    if (tok == "I")
      continue;
    char c = tok[0];
    int q = std::stoi(tok.substr(1));
    if (q < 0 || q >= n_qubits)
      throw std::invalid_argument("PauliWord: qubit index out of range");
    w.set_letter(q, c);
  }
  return w;
}

inline std::string PauliWord::str() const {
  if (is_identity())
    return "I";
  std::string s;
  for (int q = 0; q < n_qubits; ++q) {
    char c = letter(q);
    if (c == 'I')
      continue;
    if (!s.empty())
      s += ' ';
    s += c;
    s += std::to_string(q);
  }
  return s;
}

namespace detail {

/// Map a qubit-space mask (bit q = qubit q) to basis-index space
/// (qubit 0 = most significant bit).
inline std::uint64_t index_space_mask(int n_qubits, std::uint64_t qubit_mask) {
  std::uint64_t m = 0;
  for (int q = 0; q < n_qubits; ++q)
    if (qubit_mask >> q & 1u)
      m |= std::uint64_t{1} << (n_qubits - 1 - q);
  return m;
}

/// Accumulate coeff * P|in⟩ into out.  Y contributes i per flipped bit set,
/// Z/Y contribute (-1) per occupied bit under the z mask.
inline void accumulate_word(const PauliWord &w, cplx coeff,
                            const StateVector &in, StateVector &out) {
  int n = in.n_qubits();
  std::uint64_t flip = index_space_mask(n, w.x_mask);
  std::uint64_t zm = index_space_mask(n, w.z_mask);
  int ny = std::popcount(w.x_mask & w.z_mask);
  static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx base = coeff * i_pow[ny & 3];
  std::size_t dim = in.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    double sign = (std::popcount(i & zm) & 1) ? -1.0 : 1.0;
    out[i ^ flip] += base * sign * in[i];
  }
}

} // namespace detail

/// P|ψ⟩ with exact phase bookkeeping.
inline StateVector apply_word(const PauliWord &w, const StateVector &psi) {
  if (w.n_qubits != psi.n_qubits())
    throw std::invalid_argument("apply_word: qubit count mismatch");
  StateVector out(psi.n_qubits());
  detail::accumulate_word(w, cplx{1.0, 0.0}, psi, out);
  return out;
}

/// Σ_k c_k P_k |ψ⟩, term order fixed for reproducibility.
inline StateVector apply_sum(const PauliSum &h, const StateVector &psi) {
  if (h.n_qubits != psi.n_qubits())
    throw std::invalid_argument("apply_sum: qubit count mismatch");
  StateVector out(psi.n_qubits());
  for (const auto &[c, w] : h.terms)
    detail::accumulate_word(w, cplx{c, 0.0}, psi, out);
  return out;
}

/// ⟨ψ|H|ψ⟩ for a normalized state; rejects non-Hermitian residue.
inline double expectation(const PauliSum &h, const StateVector &psi) {
  StateVector hpsi = apply_sum(h, psi);
  cplx e = inner(psi, hpsi);
  if (std::abs(e.imag()) > 1e-8)
    throw std::runtime_error("expectation: imaginary residue exceeds 1e-8, "
                             "sum is not Hermitian");
  return e.real();
}

/// ⟨H²⟩ − ⟨H⟩² computed as ‖H|ψ⟩‖² − E²; tiny negatives clamped to 0.
inline double variance(const PauliSum &h, const StateVector &psi) {
  StateVector hpsi = apply_sum(h, psi);
  cplx e = inner(psi, hpsi);
  if (std::abs(e.imag()) > 1e-8)
    throw std::runtime_error("variance: imaginary residue exceeds 1e-8");
  double v = hpsi.norm_sq() - e.real() * e.real();
  return v < 0.0 ? 0.0 : v;
}

/// Tr(H)/2^n: every non-identity word is traceless, so this is the
/// coefficient of the all-identity word (E_∞ for the noise model).
inline double trace_mean(const PauliSum &h) {
  double s = 0.0;
  for (const auto &[c, w] : h.terms)
    if (w.is_identity())
      s += c;
  return s;
}

/// Merge duplicate words, drop |coeff| < tol, canonical (x,z) ordering.
inline PauliSum simplify(const PauliSum &h, double drop_tolerance = 1e-12) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> acc;
  for (const auto &[c, w] : h.terms)
    acc[{w.x_mask, w.z_mask}] += c;
  PauliSum out(h.n_qubits);
  for (const auto &[key, c] : acc) {
    if (std::abs(c) < drop_tolerance)
      continue;
    out.terms.emplace_back(c, PauliWord(h.n_qubits, key.first, key.second));
  }
  return out;
}

/// Text format: header `qubits: <n>`, then one `coeff  tokens` line per term.
inline void write_pauli_sum(std::ostream &os, const PauliSum &h) {
  os << "qubits: " << h.n_qubits << "\n";
  char buf[64];
  for (const auto &[c, w] : h.terms) {
    std::snprintf(buf, sizeof buf, "%.17g", c);
    os << buf << " " << w.str() << "\n";
  }
}

inline PauliSum read_pauli_sum(std::istream &is) {
  std::string line;
  int n_qubits = -1;
  PauliSum sum;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first))
      continue;
    if (first == "qubits:") {
      if (!(ss >> n_qubits) || n_qubits < 1)
        throw std::runtime_error("pauli sum: malformed qubits header");
      sum = PauliSum(n_qubits);
      continue;
    }
    if (n_qubits < 0)
      throw std::runtime_error("pauli sum: missing `qubits: <n>` header");
    double coeff = std::stod(first);
    std::string rest;
    std::getline(ss, rest);
    sum.add(coeff, PauliWord::parse(n_qubits, rest));
  }
  if (n_qubits < 0)
    throw std::runtime_error("pauli sum: missing `qubits: <n>` header");
  return sum;
}

} // namespace gonogo
