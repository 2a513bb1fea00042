#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace gonogo {

using cplx = std::complex<double>;

/// Dense complex amplitude vector over 2^n computational basis states.
/// Basis index convention: big-endian bit string of qubit occupations,
/// qubit 0 is the most significant bit of the index.
class StateVector {
public:
  static constexpr int kMaxQubits = 26;

  explicit StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1)
      throw std::invalid_argument("StateVector: n_qubits must be positive");
    if (n_qubits > kMaxQubits)
      throw std::invalid_argument(
          "StateVector: n_qubits exceeds the 26-qubit memory ceiling");
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  }

  /// |b⟩ where bit q of `qubit_mask` marks qubit q as set.
  static StateVector basis_state(int n_qubits, std::uint64_t qubit_mask) {
    StateVector psi(n_qubits);
    psi.amps_[psi.index_of(qubit_mask)] = cplx{1.0, 0.0};
    return psi;
  }

  /// Normalized pseudo-random complex vector, reproducible from the seed.
  static StateVector random(int n_qubits, std::uint64_t seed) {
    StateVector psi(n_qubits);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto &a : psi.amps_) {
      double re = gauss(rng);
      double im = gauss(rng);
      a = cplx{re, im};
    }
    psi.normalize();
    return psi;
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  cplx &operator[](std::size_t i) { return amps_[i]; }
  const cplx &operator[](std::size_t i) const { return amps_[i]; }

  std::vector<cplx> &amplitudes() { return amps_; }
  const std::vector<cplx> &amplitudes() const { return amps_; }

  /// Basis index whose qubit occupations are given by bit q of `qubit_mask`.
  std::size_t index_of(std::uint64_t qubit_mask) const {
    std::size_t idx = 0;
    for (int q = 0; q < n_qubits_; ++q)
      if (qubit_mask >> q & 1u)
        idx |= std::size_t{1} << (n_qubits_ - 1 - q);
    return idx;
  }

  double norm_sq() const {
    double s = 0.0;
    for (const auto &a : amps_)
      s += std::norm(a);
    return s;
  }

  double norm() const { return std::sqrt(norm_sq()); }

  void normalize() {
    double n = norm();
    if (n < 1e-300)
      throw std::runtime_error("StateVector: cannot normalize zero vector");
    double inv = 1.0 / n;
    for (auto &a : amps_)
      a *= inv;
  }

  void scale(cplx c) {
    for (auto &a : amps_)
      a *= c;
  }

  /// this += c * other
  void axpy(cplx c, const StateVector &other) {
    if (other.dim() != dim())
      throw std::invalid_argument("StateVector: dimension mismatch in axpy");
    for (std::size_t i = 0; i < amps_.size(); ++i)
      amps_[i] += c * other.amps_[i];
  }

private:
  int n_qubits_;
  std::vector<cplx> amps_;
};

/// ⟨a|b⟩
inline cplx inner(const StateVector &a, const StateVector &b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("inner: dimension mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i)
    s += std::conj(a[i]) * b[i];
  return s;
}

} // namespace gonogo
