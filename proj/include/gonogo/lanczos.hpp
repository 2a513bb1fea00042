#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gonogo/pauli.hpp"

namespace gonogo {

struct LanczosOptions {
  int max_krylov = 300;
  double residual_tol = 1e-9;
  bool reorthogonalize = true;
  std::uint64_t seed = 12345;
  std::optional<StateVector> start; // defaults to a seeded random vector
};

struct SpectralResult {
  double value = 0.0;
  std::optional<StateVector> vector;
  double residual = 0.0;
  bool converged = false;
  int krylov_dim = 0;
};

/// Lowest eigenvalue/eigenvector of H by Lanczos with full
/// reorthogonalization; matrix-free over apply_sum.
inline SpectralResult ground_state(const PauliSum &h,
                                   const LanczosOptions &opts = {}) {
  if (h.n_qubits > StateVector::kMaxQubits)
    throw std::invalid_argument("ground_state: qubit count exceeds ceiling");
  if (opts.max_krylov < 2 || opts.residual_tol <= 0.0)
    throw std::invalid_argument("ground_state: bad Lanczos options");

  StateVector v = opts.start ? *opts.start
                             : StateVector::random(h.n_qubits, opts.seed);
  v.normalize();

  std::vector<StateVector> basis{v};
  std::vector<double> alpha, beta;
  std::size_t dim = v.dim();
  int kmax = std::min<int>(opts.max_krylov, static_cast<int>(dim));

  SpectralResult res;
  Eigen::VectorXd ritz_coeffs;
  bool breakdown = false;

  for (int k = 0; k < kmax; ++k) {
    StateVector w = apply_sum(h, basis[k]);
    double a = inner(basis[k], w).real();
    alpha.push_back(a);
    w.axpy(cplx{-a, 0.0}, basis[k]);
    if (k > 0)
      w.axpy(cplx{-beta[k - 1], 0.0}, basis[k - 1]);
    if (opts.reorthogonalize) {
      for (const auto &u : basis) {
        cplx ov = inner(u, w);
        w.axpy(-ov, u);
      }
    }

    // Ritz values of the current tridiagonal matrix.
    int m = k + 1;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m)
        T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    res.value = es.eigenvalues()(0);
    ritz_coeffs = es.eigenvectors().col(0);
    res.krylov_dim = m;

    double b = w.norm();
    double residual_est = b * std::abs(ritz_coeffs(m - 1));
    if (residual_est < opts.residual_tol || b < 1e-13 || m == static_cast<int>(dim)) {
      res.converged = true;
      breakdown = b < 1e-13;
      break;
    }
    if (k + 1 == kmax)
      break;
    beta.push_back(b);
    w.scale(cplx{1.0 / b, 0.0});
    basis.push_back(std::move(w));
  }
  (void)breakdown;

  // Assemble the Ritz vector and recompute the true residual.
  StateVector vec(h.n_qubits);
  for (int i = 0; i < res.krylov_dim; ++i)
    vec.axpy(cplx{ritz_coeffs(i), 0.0}, basis[i]);
  vec.normalize();
  StateVector hv = apply_sum(h, vec);
  hv.axpy(cplx{-res.value, 0.0}, vec);
  res.residual = hv.norm();
  res.converged = res.residual < opts.residual_tol;
  res.vector = std::move(vec);
  return res;
}

/// Highest eigenvalue: Lanczos on −H with the value negated back.
inline SpectralResult max_energy(const PauliSum &h,
                                 const LanczosOptions &opts = {}) {
  SpectralResult res = ground_state(h.scaled(-1.0), opts);
  res.value = -res.value;
  return res;
}

/// |⟨a|b⟩|², clamped to [0,1].
inline double exact_overlap(const StateVector &a, const StateVector &b) {
  double om = std::norm(inner(a, b));
  return std::clamp(om, 0.0, 1.0);
}

} // namespace gonogo
