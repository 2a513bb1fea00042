#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "gonogo/pauli.hpp"

namespace gonogo {

/// E(τ) samples of the imaginary-time projection of a trial state.
struct ItCurve {
  struct Sample {
    double tau;
    double e_mixed;     // ⟨Ψ_V|H e^{−τH}|Ψ_V⟩ / ⟨Ψ_V|e^{−τH}|Ψ_V⟩
    double e_symmetric; // ⟨Ψ(τ)|H|Ψ(τ)⟩ with symmetric normalization
  };
  std::vector<Sample> samples;
  double tau_step = 0.0;
};

/// Evolve |φ(τ)⟩ ∝ e^{−Hτ}|Ψ_V⟩ with classical 4th-order stepping on the
/// norm-stabilized flow dψ/dτ = −(H − ⟨H⟩)ψ, renormalizing each step.
inline ItCurve propagate(const PauliSum &h, const StateVector &psi_v,
                         double tau_max, double dtau) {
  if (dtau <= 0.0 || tau_max < dtau)
    throw std::invalid_argument("propagate: need 0 < dtau <= tau_max");
  if (h.n_qubits != psi_v.n_qubits())
    throw std::invalid_argument("propagate: qubit count mismatch");

  ItCurve curve;
  curve.tau_step = dtau;
  StateVector phi = psi_v;

  auto record = [&](double tau) {
    StateVector hphi = apply_sum(h, phi);
    double e_sym = inner(phi, hphi).real() / phi.norm_sq();
    cplx ov = inner(psi_v, phi);
    if (std::abs(ov) < 1e-14)
      throw std::runtime_error(
          "propagate: trial state orthogonal to the projected state, "
          "mixed estimator undefined");
    double e_mix = (inner(psi_v, hphi) / ov).real();
    curve.samples.push_back({tau, e_mix, e_sym});
  };

  auto flow = [&](const StateVector &psi) {
    StateVector hpsi = apply_sum(h, psi);
    double mu = inner(psi, hpsi).real() / psi.norm_sq();
    StateVector d = hpsi;
    d.axpy(cplx{-mu, 0.0}, psi);
    d.scale(cplx{-1.0, 0.0});
    return d;
  };

  record(0.0);
  int n_steps = static_cast<int>(std::round(tau_max / dtau));
  for (int s = 1; s <= n_steps; ++s) {
    StateVector k1 = flow(phi);
    StateVector y2 = phi;
    y2.axpy(cplx{0.5 * dtau, 0.0}, k1);
    StateVector k2 = flow(y2);
    StateVector y3 = phi;
    y3.axpy(cplx{0.5 * dtau, 0.0}, k2);
    StateVector k3 = flow(y3);
    StateVector y4 = phi;
    y4.axpy(cplx{dtau, 0.0}, k3);
    StateVector k4 = flow(y4);
    phi.axpy(cplx{dtau / 6.0, 0.0}, k1);
    phi.axpy(cplx{dtau / 3.0, 0.0}, k2);
    phi.axpy(cplx{dtau / 3.0, 0.0}, k3);
    phi.axpy(cplx{dtau / 6.0, 0.0}, k4);
    phi.normalize();
    record(s * dtau);
  }
  return curve;
}

struct KappaResult {
  double kappa = 0.0;
  double tail_correction = 0.0;
  double decay_rate = 0.0; // fitted exponential rate of the tail
  bool converged = false;
};

/// κ = ∫₀^∞ (E_mixed(τ) − E₀) dτ via composite Simpson on the stored
/// uniform grid (4th order, so halving dtau shows the stepping order) plus
/// an exponential tail correction fitted on the last decade of samples.
inline KappaResult kappa_integral(const ItCurve &curve, double e0,
                                  double tail_threshold = 1e-7) {
  if (curve.samples.size() < 2)
    throw std::invalid_argument("kappa_integral: need at least two samples");
  KappaResult res;
  const auto &s = curve.samples;
  double h = curve.tau_step;
  std::size_t n_int = s.size() - 1; // intervals
  auto f = [&](std::size_t i) { return s[i].e_mixed - e0; };
  std::size_t simpson_end = n_int;
  if (n_int % 2 != 0)
    simpson_end = n_int >= 3 ? n_int - 3 : 0;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2)
    res.kappa += h / 3.0 * (f(i) + 4.0 * f(i + 1) + f(i + 2));
  if (simpson_end + 3 == n_int) // Simpson 3/8 on the trailing odd block
    res.kappa += 3.0 * h / 8.0 *
                 (f(n_int - 3) + 3.0 * f(n_int - 2) + 3.0 * f(n_int - 1) + f(n_int));
  else if (simpson_end != n_int)
    for (std::size_t i = simpson_end; i < n_int; ++i)
      res.kappa += 0.5 * h * (f(i) + f(i + 1));

  double tail_value = s.back().e_mixed - e0;

  // Log-linear fit of E−E0 over the last 10% of samples.
  std::size_t n_fit = std::max<std::size_t>(3, s.size() / 10);
  std::size_t start = s.size() - n_fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = start; i < s.size(); ++i) {
    double f = s[i].e_mixed - e0;
    if (f <= 0.0)
      continue;
    double x = s[i].tau, y = std::log(f);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  bool fit_ok = false;
  if (m >= 3) {
    double denom = m * sxx - sx * sx;
    if (denom > 0.0) {
      double slope = (m * sxy - sx * sy) / denom;
      if (slope < 0.0) {
        res.decay_rate = -slope;
        res.tail_correction = tail_value / res.decay_rate;
        res.kappa += res.tail_correction;
        fit_ok = true;
      }
    }
  }

  res.converged =
      std::abs(tail_value) < tail_threshold &&
      (fit_ok || std::abs(tail_value) < 1e-12); // tiny tail needs no fit
  return res;
}

/// I_Ω = (E_V − E₀)² / (2σ²).
inline double overlap_index(double e_v, double variance, double e0) {
  if (e_v < e0 - 1e-9)
    throw std::invalid_argument("overlap_index: E_V below ground state energy");
  if (variance < 0.0)
    throw std::invalid_argument("overlap_index: negative variance");
  double gap = e_v - e0;
  if (variance == 0.0)
    return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return gap * gap / (2.0 * variance);
}

/// Ω ≈ e^{−I_Ω}.
inline double predicted_overlap(double i_omega) {
  if (i_omega < 0.0)
    throw std::invalid_argument("predicted_overlap: negative index");
  return std::exp(-i_omega);
}

struct SlopeDiagnostic {
  double slope_mixed = 0.0;
  double slope_symmetric = 0.0;
  bool mixed_ok = false;     // slope_mixed ≈ −σ² within 2%
  bool symmetric_ok = false; // slope_symmetric ≈ −2σ² within 2%
};

/// Finite-difference slopes of both estimators at τ=0 against the variance.
inline SlopeDiagnostic slope_check(const ItCurve &curve, double variance) {
  if (curve.samples.size() < 3)
    throw std::invalid_argument("slope_check: need at least three samples");
  const auto &s = curve.samples;
  double dt = s[1].tau - s[0].tau;
  SlopeDiagnostic d;
  d.slope_mixed =
      (-3.0 * s[0].e_mixed + 4.0 * s[1].e_mixed - s[2].e_mixed) / (2.0 * dt);
  d.slope_symmetric = (-3.0 * s[0].e_symmetric + 4.0 * s[1].e_symmetric -
                       s[2].e_symmetric) /
                      (2.0 * dt);
  double scale = std::max(variance, 1e-12);
  d.mixed_ok = std::abs(d.slope_mixed + variance) <= 0.02 * scale;
  d.symmetric_ok = std::abs(d.slope_symmetric + 2.0 * variance) <= 0.04 * scale;
  return d;
}

inline std::string curve_csv(const ItCurve &curve) {
  std::ostringstream ss;
  ss << "tau,E_mixed,E_symmetric\n";
  char buf[128];
  for (const auto &smp : curve.samples) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", smp.tau, smp.e_mixed,
                  smp.e_symmetric);
    ss << buf;
  }
  return ss.str();
}

} // namespace gonogo
