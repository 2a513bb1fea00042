// Command-line front end: hchain, analyze, vqe, overlap, criteria, fit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gonogo/criteria.hpp"
#include "gonogo/itevo.hpp"
#include "gonogo/lanczos.hpp"
#include "gonogo/scf.hpp"
#include "gonogo/vqe.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace gonogo;

namespace {

std::string default_basis_path() { return std::string(GONOGO_DATA_DIR) + "/sto3g.basis"; }

void write_file(const fs::path &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot write " + path.string());
  f << content;
}

MolecularIntegrals load_fcidump(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw std::runtime_error("cannot open FCIDUMP " + path);
  return parse_fcidump(f);
}

struct Common {
  std::string out_dir = ".";
  std::uint64_t seed = 12345;
  int threads = 1;
  double eta = 1.6e-3;
};

std::vector<int> parse_scan(const std::string &spec) {
  // a:b:s inclusive range
  int a, b, s = 2;
  char c1, c2;
  std::istringstream ss(spec);
  if (!(ss >> a >> c1 >> b) || c1 != ':')
    throw CLI::ValidationError("--scan", "expected a:b:s");
  if (ss >> c2 >> s && c2 != ':')
    throw CLI::ValidationError("--scan", "expected a:b:s");
  if (s <= 0 || b < a)
    throw CLI::ValidationError("--scan", "empty range");
  std::vector<int> out;
  for (int n = a; n <= b; n += s)
    out.push_back(n);
  return out;
}

int cmd_hchain(const Common &common, int n_atoms, double spacing,
               const std::string &scan_spec, const std::string &basis_path) {
  auto basis = load_basis(basis_path);
  std::vector<int> n_list;
  if (!scan_spec.empty())
    n_list = parse_scan(scan_spec);
  else
    n_list.push_back(n_atoms);
  for (int n : n_list)
    if (n % 2 != 0) {
      std::cerr << "error: hchain requires even N (got " << n << ")\n";
      return 2;
    }

  fs::create_directories(common.out_dir);
  std::vector<ScanRow> rows;
  for (int n : n_list) {
    Geometry geom = build_hchain(n, spacing);
    auto shells = hydrogen_shells(geom, basis);
    AOIntegrals ao = ao_integrals(geom, shells);
    ScfResult scf = rhf(ao, n);
    if (!scf.converged) {
      std::cerr << "error: SCF did not converge for N=" << n << "\n";
      return 1;
    }
    MolecularIntegrals mo = mo_transform(ao, scf.C, n);
    auto occ = lowest_occupation(n);
    rows.push_back({n, scf.energy, determinant_variance(mo, occ),
                    fock_space_trace_mean(mo)});
    fs::path fci = fs::path(common.out_dir) / ("h" + std::to_string(n) + ".fcidump");
    write_file(fci, write_fcidump(mo));
    std::cout << "wrote " << fci.string() << " (E_HF = " << round12(scf.energy)
              << " Ha)\n";
  }
  if (n_list.size() > 1 || !scan_spec.empty()) {
    fs::path csv = fs::path(common.out_dir) / "hchain_scan.csv";
    write_file(csv, scan_csv(rows));
    std::cout << "wrote " << csv.string() << "\n";
  }
  return 0;
}

int cmd_analyze(const Common &common, const std::string &fcidump_path,
                int qubit_guard) {
  MolecularIntegrals ints = load_fcidump(fcidump_path);
  int nq = 2 * ints.n_orb();

  CriterionReport rep;
  rep.molecule_name = fs::path(fcidump_path).stem().string();
  rep.n_orb = ints.n_orb();
  rep.n_elec = ints.n_elec();
  rep.n_qubits = nq;
  rep.eta = common.eta;

  auto occ = lowest_occupation(ints.n_elec());
  rep.e_hf = determinant_energy(ints, occ);
  rep.e_v = rep.e_hf;
  rep.variance = determinant_variance(ints, occ);
  rep.e_inf = fock_space_trace_mean(ints);
  rep.provenance["EHF"] = "determinant";
  rep.provenance["EV"] = "HF-determinant";
  rep.provenance["Einf"] = "closed-form";

  if (nq <= qubit_guard) {
    PauliSum h = jordan_wigner(ints);
    LanczosOptions lopts;
    lopts.seed = common.seed;
    auto gs = ground_state(h, lopts);
    auto mx = max_energy(h, lopts);
    rep.e0 = gs.value;
    rep.e_max = mx.value;
    rep.provenance["E0"] = "lanczos";
    rep.provenance["Emax"] = "lanczos";
    StateVector hf = StateVector::basis_state(nq, determinant_mask(occ));
    rep.omega_exact = exact_overlap(hf, *gs.vector);
    rep.provenance["omegaExact"] = "statevector";
  } else {
    rep.warnings.push_back("qubit guard exceeded; exact fields unavailable");
  }

  finalize_report(rep);
  ordered_json j = to_json(rep);
  if (rep.e0 && rep.e_inf)
    j["energies"]["EinfMinusE0"] = round12(*rep.e_inf - *rep.e0);
  std::string text = j.dump(2) + "\n";
  fs::create_directories(common.out_dir);
  fs::path out = fs::path(common.out_dir) / "analyze_report.json";
  write_file(out, text);
  std::cout << text;
  return 0;
}

int cmd_vqe(const Common &common, const std::string &fcidump_path, double eps,
            const std::string &ng_spec, int max_steps, double g_tol,
            int qubit_guard) {
  MolecularIntegrals ints = load_fcidump(fcidump_path);
  int nq = 2 * ints.n_orb();
  if (nq > qubit_guard) {
    std::cerr << "error: " << nq << " qubits exceed the guard (" << qubit_guard
              << ")\n";
    return 1;
  }
  PauliSum h = jordan_wigner(ints);
  LanczosOptions lopts;
  lopts.seed = common.seed;
  auto gs = ground_state(h, lopts);

  Ansatz ansatz = build_uccsd(ints.n_orb(), ints.n_elec());
  OptimizeConfig cfg;
  cfg.max_steps = max_steps;
  cfg.g_tol = g_tol;
  cfg.e0 = gs.value;
  cfg.ground = *gs.vector;

  fs::create_directories(common.out_dir);
  fs::path csv_path = fs::path(common.out_dir) / "vqe_trajectory.csv";
  VqeTrajectory traj;
  try {
    traj = optimize(h, ansatz, cfg);
  } catch (const std::exception &ex) {
    write_file(csv_path.string() + ".partial", trajectory_csv(traj));
    std::cerr << "error: optimizer diverged: " << ex.what() << "\n";
    return 1;
  }
  write_file(csv_path, trajectory_csv(traj));

  const auto &last = traj.steps.back();
  CriterionReport rep;
  rep.molecule_name = fs::path(fcidump_path).stem().string();
  rep.n_orb = ints.n_orb();
  rep.n_elec = ints.n_elec();
  rep.n_qubits = nq;
  rep.eta = common.eta;
  rep.e0 = gs.value;
  rep.e_v = last.e_v;
  rep.e_hf = determinant_energy(ints, lowest_occupation(ints.n_elec()));
  rep.e_inf = fock_space_trace_mean(ints);
  rep.variance = last.sigma_v * last.sigma_v;
  rep.omega_exact = last.omega_exact;
  rep.eps = eps;
  rep.n_g = ng_spec == "auto" ? static_cast<double>(gate_count(ansatz))
                              : std::stod(ng_spec);
  rep.provenance["E0"] = "lanczos";
  rep.provenance["EV"] = "vqe";
  rep.provenance["Ng"] = ng_spec == "auto" ? "gate-count" : "user";
  finalize_report(rep);
  std::string text = to_json(rep).dump(2) + "\n";
  write_file(fs::path(common.out_dir) / "vqe_report.json", text);
  std::cout << text;
  return 0;
}

int cmd_overlap(const Common &common, const std::string &fcidump_path,
                const std::string &state_spec, double dtau, double tau_max,
                int qubit_guard) {
  MolecularIntegrals ints = load_fcidump(fcidump_path);
  int nq = 2 * ints.n_orb();
  if (nq > qubit_guard) {
    std::cerr << "error: " << nq << " qubits exceed the guard (" << qubit_guard
              << ")\n";
    return 1;
  }
  PauliSum h = jordan_wigner(ints);
  LanczosOptions lopts;
  lopts.seed = common.seed;
  auto gs = ground_state(h, lopts);

  StateVector psi_v(nq);
  if (state_spec == "hf") {
    psi_v = StateVector::basis_state(
        nq, determinant_mask(lowest_occupation(ints.n_elec())));
  } else if (state_spec == "vqe") {
    Ansatz ansatz = build_uccsd(ints.n_orb(), ints.n_elec());
    auto traj = optimize(h, ansatz);
    psi_v = prepare_state(ansatz, traj.steps.back().theta);
  } else {
    std::cerr << "error: --state must be hf or vqe\n";
    return 2;
  }

  ItCurve curve = propagate(h, psi_v, tau_max, dtau);
  auto kr = kappa_integral(curve, gs.value);
  double e_v = curve.samples.front().e_mixed;
  double var = variance(h, psi_v);
  double io = overlap_index(e_v, var, gs.value);

  fs::create_directories(common.out_dir);
  write_file(fs::path(common.out_dir) / "itevo_curve.csv", curve_csv(curve));

  ordered_json j;
  j["kappa"] = round12(kr.kappa);
  j["tailCorrection"] = round12(kr.tail_correction);
  j["tailConverged"] = kr.converged;
  j["omegaKappa"] = round12(std::exp(-kr.kappa));
  j["IOmega"] = round12(io);
  j["omegaIndex"] = round12(predicted_overlap(io));
  j["omegaExact"] = round12(exact_overlap(psi_v, *gs.vector));
  j["EV"] = round12(e_v);
  j["E0"] = round12(gs.value);
  j["variance"] = round12(var);
  auto slopes = slope_check(curve, var);
  j["slopeMixed"] = round12(slopes.slope_mixed);
  j["slopeSymmetric"] = round12(slopes.slope_symmetric);
  std::string text = j.dump(2) + "\n";
  write_file(fs::path(common.out_dir) / "overlap_report.json", text);
  std::cout << text;
  return 0;
}

int cmd_criteria(const Common &common, double gap, double e_noise, double e0,
                 double ng, double sigma) {
  VqeCriterionInput in;
  in.eta = common.eta;
  in.n_g = ng;
  if (gap > 0.0) {
    in.e_noise = gap;
    in.e0 = 0.0;
  } else {
    in.e_noise = e_noise;
    in.e0 = e0;
  }
  ordered_json j;
  j["eta"] = round12(in.eta);
  j["gap"] = round12(in.e_noise - in.e0);
  j["Ng"] = round12(in.n_g);
  j["epsMax"] = round12(max_tolerable_error(in));
  if (sigma >= 0.0)
    j["shots"] = shots_required(sigma, in.eta);
  std::cout << j.dump(2) << "\n";
  return 0;
}

std::vector<std::pair<double, double>> read_xy_csv(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<double, double>> data;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty())
      continue;
    for (auto &c : line)
      if (c == ',')
        c = ' ';
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) {
      if (lineno == 1)
        continue; // header
      throw std::runtime_error(path + ": malformed row at line " +
                               std::to_string(lineno));
    }
    data.emplace_back(x, y);
  }
  return data;
}

int cmd_fit(const std::string &model, const std::string &csv_path) {
  auto data = read_xy_csv(csv_path);
  ScalingFit fit;
  if (model == "quad")
    fit = noise_energy_fit(data);
  else if (model == "prop")
    fit = overlap_scaling_fit(data);
  else {
    std::cerr << "error: --model must be quad or prop\n";
    return 2;
  }
  std::cout << fit_to_json(fit).dump(2) << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quantitative go/no-go feasibility checks for quantum-chemistry "
               "workloads on noisy (VQE) and fault-tolerant (QPE) hardware"};
  app.require_subcommand(1);
  app.fallthrough(); // accept the global flags after the subcommand too

  Common common;
  app.add_option("--out", common.out_dir, "Output directory");
  app.add_option("--seed", common.seed, "Random seed");
  app.add_option("--threads", common.threads, "Thread count (reserved)");
  app.add_option("--eta", common.eta, "Target accuracy in Ha");

  auto *hchain = app.add_subcommand("hchain", "Hydrogen-chain SCF front end: FCIDUMP + scan CSV");
  int n_atoms = 2;
  double spacing = 1.8;
  std::string scan_spec, basis_path = default_basis_path();
  hchain->add_option("--n", n_atoms, "Number of hydrogen atoms");
  hchain->add_option("--spacing", spacing, "Chain spacing in bohr");
  hchain->add_option("--scan", scan_spec, "Scan range a:b:s over chain lengths");
  hchain->add_option("--basis", basis_path, "Basis data file");

  auto *analyze = app.add_subcommand("analyze", "Energy scales and criteria from an FCIDUMP");
  std::string fcidump_path;
  int qubit_guard = 24;
  analyze->add_option("--fcidump", fcidump_path, "FCIDUMP input")->required();
  analyze->add_option("--qubit-guard", qubit_guard, "Statevector qubit ceiling");

  auto *vqe = app.add_subcommand("vqe", "UCCSD VQE trajectory with noise criterion");
  double eps = 0.0;
  std::string ng_spec = "auto";
  int max_steps = 500;
  double g_tol = 1e-6;
  vqe->add_option("--fcidump", fcidump_path, "FCIDUMP input")->required();
  vqe->add_option("--eps", eps, "Per-gate error rate");
  vqe->add_option("--ng", ng_spec, "Gate count override or 'auto'");
  vqe->add_option("--max-steps", max_steps, "Optimizer step cap");
  vqe->add_option("--gtol", g_tol, "Gradient norm tolerance");
  vqe->add_option("--qubit-guard", qubit_guard, "Statevector qubit ceiling");

  auto *overlap = app.add_subcommand("overlap", "Imaginary-time curve, kappa and overlap index");
  std::string state_spec = "hf";
  double dtau = 0.01, tau_max = 50.0;
  overlap->add_option("--fcidump", fcidump_path, "FCIDUMP input")->required();
  overlap->add_option("--state", state_spec, "Trial state: hf or vqe");
  overlap->add_option("--dtau", dtau, "Imaginary-time step");
  overlap->add_option("--tau-max", tau_max, "Propagation horizon");
  overlap->add_option("--qubit-guard", qubit_guard, "Statevector qubit ceiling");

  auto *criteria = app.add_subcommand("criteria", "Tolerable-error arithmetic");
  double gap = 0.0, e_noise = 0.0, e0 = 0.0, ng = 1.0, sigma = -1.0;
  criteria->add_option("--gap", gap, "E_noise - E0 in Ha");
  criteria->add_option("--e-noise", e_noise, "Noise floor energy in Ha");
  criteria->add_option("--e0", e0, "Ground state energy in Ha");
  criteria->add_option("--ng", ng, "Gate count");
  criteria->add_option("--sigma", sigma, "Ansatz standard deviation for shot count");

  auto *fit = app.add_subcommand("fit", "Least-squares scaling fits");
  std::string model = "quad", csv_path;
  fit->add_option("--model", model, "quad (aN+bN^2) or prop (C x)");
  fit->add_option("csv", csv_path, "CSV with x,y columns")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (hchain->parsed())
      return cmd_hchain(common, n_atoms, spacing, scan_spec, basis_path);
    if (analyze->parsed())
      return cmd_analyze(common, fcidump_path, qubit_guard);
    if (vqe->parsed())
      return cmd_vqe(common, fcidump_path, eps, ng_spec, max_steps, g_tol,
                     qubit_guard);
    if (overlap->parsed())
      return cmd_overlap(common, fcidump_path, state_spec, dtau, tau_max,
                         qubit_guard);
    if (criteria->parsed())
      return cmd_criteria(common, gap, e_noise, e0, ng, sigma);
    if (fit->parsed())
      return cmd_fit(model, csv_path);
  } catch (const std::exception &ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
