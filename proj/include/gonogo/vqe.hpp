#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "gonogo/fermion.hpp"
#include "gonogo/itevo.hpp"
#include "gonogo/lanczos.hpp"
#include "gonogo/pauli.hpp"

namespace gonogo {

/// One Pauli rotation exp(i g θ P) of the Trotterized ansatz; rotations from
/// the same excitation share a parameter index.
struct Rotation {
  PauliWord word;
  double generator_coeff; // g: the imaginary part of the JW generator term
  int param_index;
};

struct Ansatz {
  int n_qubits = 0;
  std::uint64_t reference_mask = 0; // qubit-space occupation bits
  std::vector<Rotation> rotations;
  int n_params = 0;
  int n_singles = 0;
  int n_doubles = 0;
};

namespace detail {

/// JW-map the anti-Hermitian generator (product of ladder ops − h.c.) and
/// append its Pauli words as rotations sharing one parameter.  All terms are
/// purely imaginary; the imaginary coefficient becomes the rotation strength.
inline void append_excitation(Ansatz &ansatz,
                              const std::vector<std::pair<int, bool>> &ladder_ops,
                              int param) {
  CPauliMap acc;
  std::vector<std::array<CTerm, 2>> fwd, rev;
  for (auto [q, dag] : ladder_ops)
    fwd.push_back(ladder(q, dag));
  for (auto it = ladder_ops.rbegin(); it != ladder_ops.rend(); ++it)
    rev.push_back(ladder(it->first, !it->second));
  accumulate_product(acc, cplx{1.0, 0.0}, fwd);
  accumulate_product(acc, cplx{-1.0, 0.0}, rev);

  // Canonical lexicographic word order comes from the map's key ordering.
  for (const auto &[key, c] : acc) {
    if (std::abs(c) < 1e-12)
      continue;
    if (std::abs(c.real()) > 1e-10)
      throw std::runtime_error("uccsd: generator term is not anti-Hermitian");
    ansatz.rotations.push_back(
        {PauliWord(ansatz.n_qubits, key.first, key.second), c.imag(), param});
  }
}

} // namespace detail

/// One-layer UCC singles+doubles ansatz over spin orbitals, Sz-preserving
/// excitations from the closed-shell reference, one parameter per excitation.
inline Ansatz build_uccsd(int n_orb, int n_elec) {
  if (n_elec % 2 != 0)
    throw std::invalid_argument("build_uccsd: closed shell requires even n_elec");
  if (n_elec > 2 * n_orb)
    throw std::invalid_argument("build_uccsd: too many electrons");

  Ansatz ansatz;
  ansatz.n_qubits = 2 * n_orb;
  ansatz.reference_mask = (std::uint64_t{1} << n_elec) - 1; // interleaved: lowest spin-orbitals

  std::vector<int> occ, virt;
  for (int so = 0; so < 2 * n_orb; ++so)
    (so < n_elec ? occ : virt).push_back(so);
  auto spin = [](int so) { return so % 2; };

  int param = 0;
  for (int i : occ)
    for (int a : virt) {
      if (spin(i) != spin(a))
        continue;
      detail::append_excitation(ansatz, {{a, true}, {i, false}}, param);
      ++param;
      ++ansatz.n_singles;
    }
  for (std::size_t i1 = 0; i1 < occ.size(); ++i1)
    for (std::size_t i2 = i1 + 1; i2 < occ.size(); ++i2)
      for (std::size_t a1 = 0; a1 < virt.size(); ++a1)
        for (std::size_t a2 = a1 + 1; a2 < virt.size(); ++a2) {
          int i = occ[i1], j = occ[i2], a = virt[a1], b = virt[a2];
          if (spin(i) + spin(j) != spin(a) + spin(b))
            continue;
          detail::append_excitation(
              ansatz, {{a, true}, {b, true}, {j, false}, {i, false}}, param);
          ++param;
          ++ansatz.n_doubles;
        }
  ansatz.n_params = param;
  return ansatz;
}

namespace detail {

/// Apply exp(i φ P) in place: ψ ← cos(φ) ψ + i sin(φ) Pψ.
inline void apply_rotation(StateVector &psi, const PauliWord &w, double phi) {
  StateVector pw = apply_word(w, psi);
  double c = std::cos(phi), s = std::sin(phi);
  for (std::size_t i = 0; i < psi.dim(); ++i)
    psi[i] = c * psi[i] + cplx{0.0, s} * pw[i];
}

} // namespace detail

/// Reference determinant with all rotations applied in order.  `shift_rot`
/// adds `shift` to the local angle of one rotation (parameter-shift rule).
inline StateVector prepare_state(const Ansatz &ansatz,
                                 const std::vector<double> &theta,
                                 int shift_rot = -1, double shift = 0.0) {
  if (static_cast<int>(theta.size()) != ansatz.n_params)
    throw std::invalid_argument("prepare_state: parameter length mismatch");
  StateVector psi =
      StateVector::basis_state(ansatz.n_qubits, ansatz.reference_mask);
  for (std::size_t r = 0; r < ansatz.rotations.size(); ++r) {
    const auto &rot = ansatz.rotations[r];
    double phi = rot.generator_coeff * theta[rot.param_index];
    if (static_cast<int>(r) == shift_rot)
      phi += shift;
    detail::apply_rotation(psi, rot.word, phi);
  }
  return psi;
}

/// Two-qubit gate count under the CNOT-ladder decomposition: 2(weight−1)
/// per rotation of weight ≥ 2.
inline long gate_count(const Ansatz &ansatz) {
  long n_g = 0;
  for (const auto &rot : ansatz.rotations) {
    int w = rot.word.weight();
    if (w >= 2)
      n_g += 2 * (w - 1);
  }
  return n_g;
}

/// F ≈ e^{−εN_g}.
inline double fidelity(double eps, double n_g) {
  if (eps < 0.0 || n_g < 0.0)
    throw std::invalid_argument("fidelity: negative input");
  return std::exp(-eps * n_g);
}

struct NoisyEnergy {
  double energy;  // E_V + ΔE
  double delta_e; // (1−F)(E_noise − E_V)
};

/// Depolarizing-noise energy shift; under the global model e_noise = E_∞.
inline NoisyEnergy noisy_energy(double e_v, double e_noise, double f) {
  if (f < 0.0 || f > 1.0)
    throw std::invalid_argument("noisy_energy: fidelity outside [0,1]");
  double de = (1.0 - f) * (e_noise - e_v);
  return {e_v + de, de};
}

/// Shots needed for statistical error η: N_S = ceil((σ/η)²), at least one.
inline long long shots_required(double sigma, double eta) {
  if (sigma < 0.0 || eta <= 0.0)
    throw std::invalid_argument("shots_required: need sigma >= 0, eta > 0");
  double r = sigma / eta;
  return std::max<long long>(1, static_cast<long long>(std::ceil(r * r)));
}

struct OptimizeConfig {
  double g_tol = 1e-6;
  int max_steps = 500;
  double armijo_c = 1e-4;
  double shrink = 0.5;
  double init_step = 1.0;
  // Optional exact references for per-step I_Ω and Ω logging.
  std::optional<double> e0;
  std::optional<StateVector> ground;
};

struct VqeTrajectory {
  struct Step {
    std::vector<double> theta;
    double e_v;
    double sigma_v;
    double i_omega;     // NaN when no E₀ reference is available
    double omega_exact; // NaN when no ground vector is available
  };
  std::vector<Step> steps;
  bool converged = false;
  double final_grad_norm = 0.0;
};

/// Deterministic gradient descent with Armijo backtracking line search.
/// Gradients use the parameter-shift rule: for each rotation exp(iφP),
/// dE/dφ = E(φ+π/4) − E(φ−π/4), chained through the shared parameter.
inline VqeTrajectory optimize(const PauliSum &h, const Ansatz &ansatz,
                              const OptimizeConfig &cfg = {}) {
  if (h.n_qubits != ansatz.n_qubits)
    throw std::invalid_argument("optimize: qubit count mismatch");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> theta(ansatz.n_params, 0.0);

  auto energy_at = [&](const std::vector<double> &th, int shift_rot = -1,
                       double shift = 0.0) {
    return expectation(h, prepare_state(ansatz, th, shift_rot, shift));
  };
  auto gradient = [&](const std::vector<double> &th) {
    std::vector<double> g(ansatz.n_params, 0.0);
    for (std::size_t r = 0; r < ansatz.rotations.size(); ++r) {
      const auto &rot = ansatz.rotations[r];
      double ep = energy_at(th, static_cast<int>(r), M_PI / 4.0);
      double em = energy_at(th, static_cast<int>(r), -M_PI / 4.0);
      g[rot.param_index] += rot.generator_coeff * (ep - em);
    }
    return g;
  };

  VqeTrajectory traj;
  auto log_step = [&](const std::vector<double> &th, double e, double var) {
    double sigma = std::sqrt(std::max(var, 0.0));
    double io = nan, om = nan;
    if (cfg.e0)
      io = overlap_index(std::max(e, *cfg.e0), var, *cfg.e0);
    if (cfg.ground)
      om = exact_overlap(prepare_state(ansatz, th), *cfg.ground);
    traj.steps.push_back({th, e, sigma, io, om});
  };

  StateVector psi = prepare_state(ansatz, theta);
  double e = expectation(h, psi);
  double var = variance(h, psi);
  log_step(theta, e, var);

  double step = cfg.init_step;
  for (int it = 0; it < cfg.max_steps; ++it) {
    std::vector<double> g = gradient(theta);
    double gnorm_sq = 0.0;
    for (double gi : g)
      gnorm_sq += gi * gi;
    traj.final_grad_norm = std::sqrt(gnorm_sq);
    if (traj.final_grad_norm < cfg.g_tol) {
      traj.converged = true;
      break;
    }

    // Armijo backtracking along −g.
    double trial_step = std::min(step * 2.0, 4.0);
    double e_new = e;
    std::vector<double> theta_new = theta;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (int p = 0; p < ansatz.n_params; ++p)
        theta_new[p] = theta[p] - trial_step * g[p];
      e_new = energy_at(theta_new);
      if (!std::isfinite(e_new))
        throw std::runtime_error("optimize: non-finite energy, step diverged");
      if (e_new <= e - cfg.armijo_c * trial_step * gnorm_sq) {
        accepted = true;
        break;
      }
      trial_step *= cfg.shrink;
    }
    if (!accepted)
      break; // no descent possible at machine precision
    step = trial_step;
    theta = theta_new;
    e = e_new;
    var = variance(h, prepare_state(ansatz, theta));
    log_step(theta, e, var);
  }
  return traj;
}

inline std::string trajectory_csv(const VqeTrajectory &traj) {
  std::ostringstream ss;
  ss << "step,E_V,sigma_V,I_Omega,Omega_exact\n";
  char buf[160];
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const auto &s = traj.steps[i];
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g,%.12g\n", i, s.e_v,
                  s.sigma_v, s.i_omega, s.omega_exact);
    ss << buf;
  }
  return ss.str();
}

} // namespace gonogo
