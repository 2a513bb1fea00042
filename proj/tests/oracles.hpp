// Test-only oracles, kept independent of the matrix-free implementation path.
#pragma once

#include <random>

#include <Eigen/Dense>

#include "gonogo/fermion.hpp"
#include "gonogo/pauli.hpp"

namespace oracles {

using gonogo::MolecularIntegrals;
using gonogo::PauliSum;
using gonogo::PauliWord;
using gonogo::StateVector;

/// Dense matrix of a Pauli word built from 2x2 kronecker products,
/// independent of apply_word's mask arithmetic.
inline Eigen::MatrixXcd word_matrix(const PauliWord &w) {
  using Mat = Eigen::MatrixXcd;
  const std::complex<double> I{0, 1};
  Mat id = Mat::Identity(2, 2);
  Mat X(2, 2), Y(2, 2), Z(2, 2);
  X << 0, 1, 1, 0;
  Y << 0, -I, I, 0;
  Z << 1, 0, 0, -1;
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < w.n_qubits; ++q) { // qubit 0 = most significant factor
    const Mat *f = &id;
    switch (w.letter(q)) {
    case 'X':
      f = &X;
      break;
    case 'Y':
      f = &Y;
      break;
    case 'Z':
      f = &Z;
      break;
    }
    Mat next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < out.rows(); ++r)
      for (int c = 0; c < out.cols(); ++c)
        next.block(2 * r, 2 * c, 2, 2) = out(r, c) * (*f);
    out = next;
  }
  return out;
}

inline Eigen::MatrixXcd sum_matrix(const PauliSum &h) {
  std::size_t d = std::size_t{1} << h.n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto &[c, w] : h.terms)
    m += c * word_matrix(w);
  return m;
}

inline Eigen::VectorXcd to_eigen(const StateVector &psi) {
  Eigen::VectorXcd v(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i)
    v(i) = psi[i];
  return v;
}

inline StateVector from_eigen(int n_qubits, const Eigen::VectorXcd &v) {
  StateVector psi(n_qubits);
  for (std::size_t i = 0; i < psi.dim(); ++i)
    psi[i] = v(i);
  return psi;
}

inline PauliSum random_sum(int n_qubits, int n_terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> mask(0, (1ull << n_qubits) - 1);
  std::normal_distribution<double> coeff(0.0, 1.0);
  PauliSum h(n_qubits);
  for (int t = 0; t < n_terms; ++t)
    h.add(coeff(rng), PauliWord(n_qubits, mask(rng), mask(rng)));
  return h;
}

inline MolecularIntegrals random_integrals(int n_orb, std::uint64_t seed,
                                           int n_elec = 2) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.5);
  MolecularIntegrals ints(n_orb, n_elec, g(rng));
  for (int p = 0; p < n_orb; ++p)
    for (int q = 0; q <= p; ++q)
      ints.set_h(p, q, g(rng));
  for (int p = 0; p < n_orb; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s)
            continue;
          ints.set_eri(p, q, r, s, g(rng));
        }
  return ints;
}

} // namespace oracles
