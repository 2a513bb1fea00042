#pragma once

#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gonogo/fermion.hpp"

namespace gonogo {

using Vec3 = std::array<double, 3>;

struct Geometry {
  std::vector<Vec3> positions; // bohr
  std::vector<double> charges;

  std::size_t n_atoms() const { return positions.size(); }

  double nuclear_repulsion() const {
    double e = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i)
      for (std::size_t j = i + 1; j < positions.size(); ++j)
        e += charges[i] * charges[j] / distance(positions[i], positions[j]);
    return e;
  }

  static double distance(const Vec3 &a, const Vec3 &b) {
    double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  }

  void validate() const {
    for (std::size_t i = 0; i < positions.size(); ++i)
      for (std::size_t j = i + 1; j < positions.size(); ++j)
        if (distance(positions[i], positions[j]) < 1e-6)
          throw std::invalid_argument("Geometry: coincident atoms");
  }
};

/// Collinear, equally spaced hydrogen atoms on the x axis.
inline Geometry build_hchain(int n_atoms, double spacing) {
  if (n_atoms < 1)
    throw std::invalid_argument("build_hchain: n_atoms must be >= 1");
  if (spacing <= 0.0)
    throw std::invalid_argument("build_hchain: spacing must be positive");
  Geometry g;
  for (int i = 0; i < n_atoms; ++i) {
    g.positions.push_back({i * spacing, 0.0, 0.0});
    g.charges.push_back(1.0);
  }
  return g;
}

/// Contracted s-type Gaussian shell; normalized on construction.
struct ContractedShell {
  std::vector<double> exponents;
  std::vector<double> coefficients; // include primitive norms after normalize()
  Vec3 center{0, 0, 0};

  void normalize() {
    const double pi = std::numbers::pi;
    // Primitive norms (2α/π)^{3/4}.
    for (std::size_t k = 0; k < exponents.size(); ++k)
      coefficients[k] *= std::pow(2.0 * exponents[k] / pi, 0.75);
    // Contraction norm so the self-overlap is 1.
    double s = 0.0;
    for (std::size_t k = 0; k < exponents.size(); ++k)
      for (std::size_t l = 0; l < exponents.size(); ++l)
        s += coefficients[k] * coefficients[l] *
             std::pow(pi / (exponents[k] + exponents[l]), 1.5);
    double f = 1.0 / std::sqrt(s);
    for (auto &c : coefficients)
      c *= f;
  }
};

/// Read `exponent coefficient` lines under a `[H STO-3G]` section header.
inline std::vector<std::pair<double, double>>
load_basis(const std::string &path, const std::string &section = "[H STO-3G]") {
  std::ifstream f(path);
  if (!f)
    throw std::runtime_error("load_basis: cannot open " + path);
  std::vector<std::pair<double, double>> prims;
  std::string line;
  bool in_section = false;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty())
      continue;
    if (trimmed[0] == '[') {
      in_section = trimmed.rfind(section, 0) == 0;
      continue;
    }
    if (!in_section)
      continue;
    std::istringstream ss(trimmed);
    double e, c;
    if (ss >> e >> c)
      prims.emplace_back(e, c);
  }
  if (prims.empty())
    throw std::runtime_error("load_basis: section " + section + " not found in " + path);
  return prims;
}

inline std::vector<ContractedShell>
hydrogen_shells(const Geometry &geom,
                const std::vector<std::pair<double, double>> &prims) {
  std::vector<ContractedShell> shells;
  for (const auto &pos : geom.positions) {
    ContractedShell sh;
    for (auto [e, c] : prims) {
      sh.exponents.push_back(e);
      sh.coefficients.push_back(c);
    }
    sh.center = pos;
    sh.normalize();
    shells.push_back(std::move(sh));
  }
  return shells;
}

/// Boys function F₀(x) = ∫₀¹ e^{−t²x} dt.
inline double boys_f0(double x) {
  if (x < 0.0)
    throw std::invalid_argument("boys_f0: negative argument");
  if (x < 1e-2) {
    // Σ (−x)^k / (k! (2k+1)); 10 terms give < 1e-24 truncation here.
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 10; ++k) {
      term *= -x / k;
      sum += term / (2 * k + 1);
    }
    return sum;
  }
  return 0.5 * std::sqrt(std::numbers::pi / x) * std::erf(std::sqrt(x));
}

struct AOIntegrals {
  Eigen::MatrixXd S, T, V;
  std::vector<double> eri; // 8-fold compressed, same layout as MolecularIntegrals
  double e_nuc = 0.0;
  int n_orb = 0;

  std::size_t eri_index(int p, int q, int r, int s) const {
    auto pair = [](int a, int b) {
      if (a < b)
        std::swap(a, b);
      return std::size_t(a) * (a + 1) / 2 + b;
    };
    auto pq = pair(p, q), rs = pair(r, s);
    if (pq < rs)
      std::swap(pq, rs);
    return pq * (pq + 1) / 2 + rs;
  }
  double get_eri(int p, int q, int r, int s) const {
    return eri[eri_index(p, q, r, s)];
  }
};

namespace detail {

inline double dist_sq(const Vec3 &a, const Vec3 &b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

inline Vec3 gaussian_center(double a, const Vec3 &A, double b, const Vec3 &B) {
  double p = a + b;
  return {(a * A[0] + b * B[0]) / p, (a * A[1] + b * B[1]) / p,
          (a * A[2] + b * B[2]) / p};
}

} // namespace detail

/// All AO tensors for a set of contracted s shells (closed forms via F₀).
inline AOIntegrals ao_integrals(const Geometry &geom,
                                const std::vector<ContractedShell> &shells) {
  geom.validate();
  const double pi = std::numbers::pi;
  int n = static_cast<int>(shells.size());
  AOIntegrals ao;
  ao.n_orb = n;
  ao.S = Eigen::MatrixXd::Zero(n, n);
  ao.T = Eigen::MatrixXd::Zero(n, n);
  ao.V = Eigen::MatrixXd::Zero(n, n);
  ao.e_nuc = geom.nuclear_repulsion();

  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const auto &A = shells[i];
      const auto &B = shells[j];
      double rab2 = detail::dist_sq(A.center, B.center);
      double s = 0.0, t = 0.0, v = 0.0;
      for (std::size_t ka = 0; ka < A.exponents.size(); ++ka)
        for (std::size_t kb = 0; kb < B.exponents.size(); ++kb) {
          double a = A.exponents[ka], b = B.exponents[kb];
          double cc = A.coefficients[ka] * B.coefficients[kb];
          double p = a + b;
          double mu = a * b / p;
          double pref = cc * std::exp(-mu * rab2);
          double s_prim = pref * std::pow(pi / p, 1.5);
          s += s_prim;
          t += mu * (3.0 - 2.0 * mu * rab2) * s_prim;
          Vec3 P = detail::gaussian_center(a, A.center, b, B.center);
          for (std::size_t c = 0; c < geom.positions.size(); ++c) {
            double rpc2 = detail::dist_sq(P, geom.positions[c]);
            v -= geom.charges[c] * pref * 2.0 * pi / p * boys_f0(p * rpc2);
          }
        }
      ao.S(i, j) = ao.S(j, i) = s;
      ao.T(i, j) = ao.T(j, i) = t;
      ao.V(i, j) = ao.V(j, i) = v;
    }

  std::size_t np = MolecularIntegrals::pair_count(n);
  ao.eri.assign(np * (np + 1) / 2, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= k; ++l) {
          if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l)
            continue;
          const auto &A = shells[i];
          const auto &B = shells[j];
          const auto &C = shells[k];
          const auto &D = shells[l];
          double rab2 = detail::dist_sq(A.center, B.center);
          double rcd2 = detail::dist_sq(C.center, D.center);
          double g = 0.0;
          for (std::size_t ka = 0; ka < A.exponents.size(); ++ka)
            for (std::size_t kb = 0; kb < B.exponents.size(); ++kb) {
              double a = A.exponents[ka], b = B.exponents[kb];
              double p = a + b;
              double eab = std::exp(-a * b / p * rab2);
              Vec3 P = detail::gaussian_center(a, A.center, b, B.center);
              double cab = A.coefficients[ka] * B.coefficients[kb];
              for (std::size_t kc = 0; kc < C.exponents.size(); ++kc)
                for (std::size_t kd = 0; kd < D.exponents.size(); ++kd) {
                  double c = C.exponents[kc], d = D.exponents[kd];
                  double q = c + d;
                  double ecd = std::exp(-c * d / q * rcd2);
                  Vec3 Q = detail::gaussian_center(c, C.center, d, D.center);
                  double rpq2 = detail::dist_sq(P, Q);
                  double pref = cab * C.coefficients[kc] * D.coefficients[kd];
                  g += pref * 2.0 * std::pow(pi, 2.5) /
                       (p * q * std::sqrt(p + q)) * eab * ecd *
                       boys_f0(p * q / (p + q) * rpq2);
                }
            }
          ao.eri[ao.eri_index(i, j, k, l)] = g;
        }
  return ao;
}

struct ScfOptions {
  double e_tol = 1e-10;
  double d_tol = 1e-8;
  int max_iter = 200;
  int diis_window = 8;
};

struct ScfResult {
  double energy = 0.0; // E_HF including e_nuc
  Eigen::MatrixXd C;
  Eigen::VectorXd orbital_energies;
  bool converged = false;
  int iterations = 0;
  std::vector<double> energy_history;
};

/// Closed-shell restricted Hartree–Fock with DIIS acceleration and
/// symmetric orthogonalization.  Core-Hamiltonian initial guess.
inline ScfResult rhf(const AOIntegrals &ao, int n_elec,
                     const ScfOptions &opts = {}) {
  if (n_elec % 2 != 0)
    throw std::invalid_argument("rhf: closed shell requires even n_elec");
  int n = ao.n_orb;
  int nocc = n_elec / 2;
  if (nocc > n)
    throw std::invalid_argument("rhf: more electron pairs than orbitals");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(ao.S);
  if (s_eig.eigenvalues().minCoeff() < 1e-8)
    throw std::runtime_error("rhf: near-singular overlap matrix");
  Eigen::MatrixXd X = s_eig.eigenvectors() *
      s_eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      s_eig.eigenvectors().transpose();

  Eigen::MatrixXd hcore = ao.T + ao.V;

  auto build_density = [&](const Eigen::MatrixXd &C) {
    if (nocc == 0)
      return Eigen::MatrixXd::Zero(n, n).eval();
    return (2.0 * C.leftCols(nocc) * C.leftCols(nocc).transpose()).eval();
  };
  auto solve_fock = [&](const Eigen::MatrixXd &F, Eigen::MatrixXd &C,
                        Eigen::VectorXd &eps) {
    Eigen::MatrixXd Fp = X.transpose() * F * X;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Fp);
    C = X * es.eigenvectors();
    eps = es.eigenvalues();
  };
  auto build_g = [&](const Eigen::MatrixXd &D) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        double g = 0.0;
        for (int la = 0; la < n; ++la)
          for (int si = 0; si < n; ++si)
            g += D(la, si) * (ao.get_eri(mu, nu, si, la) -
                              0.5 * ao.get_eri(mu, la, si, nu));
        G(mu, nu) = g;
      }
    return G;
  };

  ScfResult res;
  Eigen::MatrixXd C;
  Eigen::VectorXd eps;
  solve_fock(hcore, C, eps);
  Eigen::MatrixXd D = build_density(C);
  double e_prev = 0.0;

  std::deque<Eigen::MatrixXd> diis_f, diis_err;
  for (int it = 1; it <= opts.max_iter; ++it) {
    Eigen::MatrixXd F = hcore + build_g(D);

    // Pulay error in the orthonormal basis.
    Eigen::MatrixXd err = X.transpose() * (F * D * ao.S - ao.S * D * F) * X;
    diis_f.push_back(F);
    diis_err.push_back(err);
    if (static_cast<int>(diis_f.size()) > opts.diis_window) {
      diis_f.pop_front();
      diis_err.pop_front();
    }
    if (it > 2 && diis_f.size() >= 2) {
      int m = static_cast<int>(diis_f.size());
      Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m + 1, m + 1);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          B(a, b) = (diis_err[a].array() * diis_err[b].array()).sum();
      B.row(m).setConstant(-1.0);
      B.col(m).setConstant(-1.0);
      B(m, m) = 0.0;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
      rhs(m) = -1.0;
      Eigen::VectorXd w = B.fullPivLu().solve(rhs);
      if (w.allFinite()) {
        Eigen::MatrixXd Fmix = Eigen::MatrixXd::Zero(n, n);
        for (int a = 0; a < m; ++a)
          Fmix += w(a) * diis_f[a];
        F = Fmix;
      }
    }

    solve_fock(F, C, eps);
    Eigen::MatrixXd D_new = build_density(C);
    // Energy from the un-extrapolated Fock matrix of the new density.
    Eigen::MatrixXd F_new = hcore + build_g(D_new);
    double e_el = 0.5 * (D_new.array() * (hcore + F_new).array()).sum();
    double e_tot = e_el + ao.e_nuc;

    double d_change = (D_new - D).cwiseAbs().maxCoeff();
    double e_change = std::abs(e_tot - e_prev);
    D = D_new;
    e_prev = e_tot;
    res.energy_history.push_back(e_tot);
    res.iterations = it;
    if (it > 1 && d_change < opts.d_tol && e_change < opts.e_tol) {
      res.converged = true;
      break;
    }
  }
  res.energy = e_prev;
  res.C = C;
  res.orbital_energies = eps;
  return res;
}

/// h = Cᵀ(T+V)C plus four staged O(N⁵) quarter transforms of the ERI tensor.
inline MolecularIntegrals mo_transform(const AOIntegrals &ao,
                                       const Eigen::MatrixXd &C, int n_elec) {
  int n = ao.n_orb;
  if (C.rows() != n || C.cols() != n)
    throw std::invalid_argument("mo_transform: coefficient shape mismatch");
  MolecularIntegrals ints(n, n_elec, ao.e_nuc);

  Eigen::MatrixXd h = C.transpose() * (ao.T + ao.V) * C;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      ints.set_h(p, q, 0.5 * (h(p, q) + h(q, p)));

  auto idx = [n](int a, int b, int c, int d) {
    return ((std::size_t(a) * n + b) * n + c) * n + d;
  };
  std::vector<double> t0(std::size_t(n) * n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          t0[idx(a, b, c, d)] = ao.get_eri(a, b, c, d);

  std::vector<double> t1(t0.size());
  for (int stage = 0; stage < 4; ++stage) {
    // Transform the last index, then rotate indices so each AO index
    // passes through the last slot once.
    std::fill(t1.begin(), t1.end(), 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int p = 0; p < n; ++p) {
            double s = 0.0;
            for (int d = 0; d < n; ++d)
              s += t0[idx(a, b, c, d)] * C(d, p);
            t1[idx(p, a, b, c)] = s; // rotate: new index goes to the front
          }
    std::swap(t0, t1);
  }
  // After four rotations the layout is (p,q,r,s) ≡ C-transformed (pq|rs).
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s)
            continue;
          ints.set_eri(p, q, r, s, t0[idx(p, q, r, s)]);
        }
  return ints;
}

struct ScanRow {
  int n_atoms;
  double e_hf;
  double var_hf;
  double e_inf;
};

///// One row per chain length: E_HF, determinant variance, E_∞.
inline std::vector<ScanRow>
hchain_scan(const std::vector<int> &n_list, double spacing,
            const std::vector<std::pair<double, double>> &basis,
            const ScfOptions &opts = {}) {
  std::vector<ScanRow> rows;
  for (int N : n_list) {
    if (N % 2 != 0)
      throw std::invalid_argument("hchain_scan: chain lengths must be even");
    Geometry geom = build_hchain(N, spacing);
    auto shells = hydrogen_shells(geom, basis);
    AOIntegrals ao = ao_integrals(geom, shells);
    ScfResult scf = rhf(ao, N, opts);
    if (!scf.converged)
      throw std::runtime_error("hchain_scan: SCF did not converge for N=" +
                               std::to_string(N));
    MolecularIntegrals mo = mo_transform(ao, scf.C, N);
    auto occ = lowest_occupation(N);
    rows.push_back({N, scf.energy, determinant_variance(mo, occ),
                    fock_space_trace_mean(mo)});
  }
  return rows;
}

inline std::string scan_csv(const std::vector<ScanRow> &rows) {
  std::ostringstream ss;
  ss << "N,E_HF,var_HF,E_inf\n";
  char buf[128];
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g\n", r.n_atoms, r.e_hf,
                  r.var_hf, r.e_inf);
    ss << buf;
  }
  return ss.str();
}

} // namespace gonogo
