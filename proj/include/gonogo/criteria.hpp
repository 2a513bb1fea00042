#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace gonogo {

struct VqeCriterionInput {
  double eta = 1.6e-3; // chemical accuracy, Ha
  double e_noise = 0.0;
  double e0 = 0.0;
  double n_g = 1.0;
};

/// ε_max = η / ((E_noise − E₀) N_g): the highest per-gate error rate for
/// which the depolarizing energy shift stays below the target accuracy.
inline double max_tolerable_error(const VqeCriterionInput &in) {
  if (in.eta <= 0.0)
    throw std::invalid_argument("max_tolerable_error: eta must be positive");
  if (in.n_g < 1.0)
    throw std::invalid_argument("max_tolerable_error: need at least one gate");
  if (in.e_noise <= in.e0)
    throw std::invalid_argument(
        "max_tolerable_error: noise floor must lie above the ground state");
  return in.eta / ((in.e_noise - in.e0) * in.n_g);
}

struct ScalingFit {
  std::string model;         // "quad" (aN + bN²) or "prop" (C·x)
  double a = 0.0, b = 0.0;   // quad coefficients
  double c = 0.0;            // prop coefficient
  double stderr_a = 0.0, stderr_b = 0.0, stderr_c = 0.0;
  double residual_norm = 0.0;
  int n_samples = 0;
};

/// Least-squares fit of E = aN + bN² (no constant term).
inline ScalingFit noise_energy_fit(const std::vector<std::pair<double, double>> &data) {
  if (data.size() < 3)
    throw std::invalid_argument("noise_energy_fit: need at least three points");
  int m = static_cast<int>(data.size());
  Eigen::MatrixXd X(m, 2);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    X(i, 0) = data[i].first;
    X(i, 1) = data[i].first * data[i].first;
    y(i) = data[i].second;
  }
  Eigen::MatrixXd xtx = X.transpose() * X;
  if (std::abs(xtx.determinant()) < 1e-12 * xtx.norm() * xtx.norm())
    throw std::invalid_argument("noise_energy_fit: rank-deficient design");
  Eigen::VectorXd coef = xtx.ldlt().solve(X.transpose() * y);
  Eigen::VectorXd resid = y - X * coef;

  ScalingFit fit;
  fit.model = "quad";
  fit.a = coef(0);
  fit.b = coef(1);
  fit.residual_norm = resid.norm();
  fit.n_samples = m;
  if (m > 2) {
    double s2 = resid.squaredNorm() / (m - 2);
    Eigen::MatrixXd cov = s2 * xtx.inverse();
    fit.stderr_a = std::sqrt(std::max(cov(0, 0), 0.0));
    fit.stderr_b = std::sqrt(std::max(cov(1, 1), 0.0));
  }
  return fit;
}

/// Proportional fit I_Ω = C·|E−E₀|.
inline ScalingFit overlap_scaling_fit(const std::vector<std::pair<double, double>> &data) {
  if (data.empty())
    throw std::invalid_argument("overlap_scaling_fit: empty data");
  double sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : data) {
    sxx += x * x;
    sxy += x * y;
  }
  if (sxx == 0.0)
    throw std::invalid_argument("overlap_scaling_fit: all abscissae are zero");
  ScalingFit fit;
  fit.model = "prop";
  fit.c = sxy / sxx;
  fit.n_samples = static_cast<int>(data.size());
  double rss = 0.0;
  for (auto [x, y] : data) {
    double r = y - fit.c * x;
    rss += r * r;
  }
  fit.residual_norm = std::sqrt(rss);
  if (data.size() > 1)
    fit.stderr_c = std::sqrt(rss / (data.size() - 1) / sxx);
  return fit;
}

/// Ω(N) = e^{−αN} under the extensive-overlap-index scaling.
inline double qpe_success_extrapolation(double alpha, double n) {
  if (alpha < 0.0)
    throw std::invalid_argument("qpe_success_extrapolation: negative alpha");
  return std::exp(-alpha * n);
}

/// Smallest N at which e^{−αN} drops below the threshold (infinite if never).
inline double qpe_crossing_size(double alpha, double threshold) {
  if (alpha <= 0.0)
    return std::numeric_limits<double>::infinity();
  return -std::log(threshold) / alpha;
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

/// Round to 12 significant digits so serialized reports are stable.
inline double round12(double v) {
  if (!std::isfinite(v))
    return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

struct CriterionReport {
  std::string molecule_name;
  int n_orb = 0;
  int n_elec = 0;
  int n_qubits = 0;

  std::optional<double> e0, e_v, e_hf, e_inf, e_max;
  std::optional<double> variance;

  std::optional<double> eps;     // per-gate error rate
  std::optional<double> n_g;     // gate count
  std::optional<double> f;       // fidelity
  std::optional<double> delta_e; // noise-induced error
  std::optional<double> eps_max; // tolerable error
  std::optional<long long> shots;
  double eta = 1.6e-3;

  std::optional<double> i_omega, omega_index, omega_kappa, omega_exact;

  double omega_threshold = 0.1;
  std::optional<bool> go_vqe, go_qpe;

  std::map<std::string, std::string> provenance;
  std::vector<std::string> warnings;
};

namespace detail {

inline void put(nlohmann::ordered_json &j, const std::string &key,
                const std::optional<double> &v) {
  if (v)
    j[key] = round12(*v);
  else
    j[key] = nullptr;
}

} // namespace detail

inline nlohmann::ordered_json to_json(const CriterionReport &r) {
  nlohmann::ordered_json j;
  j["molecule"] = {{"name", r.molecule_name},
                   {"nOrb", r.n_orb},
                   {"nElec", r.n_elec},
                   {"nQubits", r.n_qubits}};
  auto &en = j["energies"];
  detail::put(en, "E0", r.e0);
  detail::put(en, "EV", r.e_v);
  detail::put(en, "EHF", r.e_hf);
  detail::put(en, "Einf", r.e_inf);
  detail::put(en, "Emax", r.e_max);
  detail::put(j, "variance", r.variance);
  auto &no = j["noise"];
  detail::put(no, "eps", r.eps);
  detail::put(no, "Ng", r.n_g);
  detail::put(no, "F", r.f);
  detail::put(no, "deltaE", r.delta_e);
  detail::put(no, "epsMax", r.eps_max);
  if (r.shots)
    no["shots"] = *r.shots;
  else
    no["shots"] = nullptr;
  no["eta"] = round12(r.eta);
  auto &ov = j["overlap"];
  detail::put(ov, "IOmega", r.i_omega);
  detail::put(ov, "omegaIndex", r.omega_index);
  detail::put(ov, "omegaKappa", r.omega_kappa);
  detail::put(ov, "omegaExact", r.omega_exact);
  j["fits"] = nlohmann::ordered_json::object();
  auto &vd = j["verdict"];
  vd["vqe"] = r.go_vqe ? nlohmann::ordered_json(*r.go_vqe)
                       : nlohmann::ordered_json(nullptr);
  vd["qpe"] = r.go_qpe ? nlohmann::ordered_json(*r.go_qpe)
                       : nlohmann::ordered_json(nullptr);
  vd["omegaThreshold"] = round12(r.omega_threshold);
  j["provenance"] = r.provenance;
  if (!r.warnings.empty())
    j["warnings"] = r.warnings;
  return j;
}

inline nlohmann::ordered_json fit_to_json(const ScalingFit &f) {
  nlohmann::ordered_json j;
  j["model"] = f.model;
  if (f.model == "quad") {
    j["a"] = round12(f.a);
    j["b"] = round12(f.b);
    j["stderrA"] = round12(f.stderr_a);
    j["stderrB"] = round12(f.stderr_b);
  } else {
    j["C"] = round12(f.c);
    j["stderrC"] = round12(f.stderr_c);
  }
  j["residualNorm"] = round12(f.residual_norm);
  j["nSamples"] = f.n_samples;
  return j;
}

/// Fill every derivable field of the report from whatever is present.
/// E₀ provenance hierarchy: exact > user estimate > E_V fallback.
inline void finalize_report(CriterionReport &r) {
  // Ground-state reference for the overlap index.
  std::optional<double> e0_ref = r.e0;
  if (!e0_ref && r.e_v) {
    e0_ref = r.e_v;
    r.provenance["E0"] = "EV-fallback-low-confidence";
    r.warnings.push_back("E0 unavailable; using EV as low-confidence proxy");
  }

  if (r.eps && r.n_g)
    r.f = std::exp(-*r.eps * *r.n_g);
  if (r.f && r.e_inf && r.e_v)
    r.delta_e = (1.0 - *r.f) * (*r.e_inf - *r.e_v);
  if (r.e_inf && e0_ref && r.n_g && *r.e_inf > *e0_ref)
    r.eps_max = r.eta / ((*r.e_inf - *e0_ref) * *r.n_g);
  if (r.variance && *r.variance > 0.0)
    r.shots = std::max<long long>(
        1, static_cast<long long>(
               std::ceil(*r.variance / (r.eta * r.eta))));

  if (r.e_v && e0_ref && r.variance && *r.variance > 0.0) {
    double gap = std::max(0.0, *r.e_v - *e0_ref);
    r.i_omega = gap * gap / (2.0 * *r.variance);
    r.omega_index = std::exp(-*r.i_omega);
  }

  if (r.delta_e)
    r.go_vqe = std::abs(*r.delta_e) <= r.eta;
  std::optional<double> best_omega = r.omega_exact;
  if (!best_omega)
    best_omega = r.omega_kappa;
  if (!best_omega)
    best_omega = r.omega_index;
  if (best_omega)
    r.go_qpe = *best_omega >= r.omega_threshold;
}

} // namespace gonogo
