#include <doctest.h>

#include <sstream>

#include "gonogo/fermion.hpp"
#include "gonogo/lanczos.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace gonogo;

TEST_SUITE("fermion_map") {

TEST_CASE("parse_fcidump sentinels") {
  std::string text = "&FCI NORB=1,NELEC=2,MS2=0,\n ORBSYM=1,\n ISYM=1,\n&END\n"
                     "0.5 0 0 0 0\n";
  MolecularIntegrals ints = parse_fcidump(text);
  CHECK(ints.n_orb() == 1);
  CHECK(ints.n_elec() == 2);
  CHECK(ints.e_core() == doctest::Approx(0.5));
  CHECK(ints.h(0, 0) == 0.0);
  CHECK(ints.eri(0, 0, 0, 0) == 0.0);

  MolecularIntegrals one =
      parse_fcidump("&FCI NORB=1,NELEC=2,MS2=0,\n&END\n1.0 1 1 0 0\n");
  CHECK(one.h(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("parse_fcidump accepts / terminator and fills symmetry partners") {
  MolecularIntegrals ints = parse_fcidump(
      "&FCI NORB=2,NELEC=2,MS2=0,\n/\n0.25 2 1 2 2\n0.5 2 1 0 0\n");
  CHECK(ints.h(0, 1) == doctest::Approx(0.5));
  CHECK(ints.h(1, 0) == doctest::Approx(0.5));
  // (21|22) = (12|22) = (22|21) = ...
  CHECK(ints.eri(0, 1, 1, 1) == doctest::Approx(0.25));
  CHECK(ints.eri(1, 1, 1, 0) == doctest::Approx(0.25));
}

TEST_CASE("parse_fcidump error paths") {
  CHECK_THROWS(parse_fcidump("NORB=1\n&END\n"));
  CHECK_THROWS(parse_fcidump("&FCI NORB=1,NELEC=2,\n&END\n1.0 3 1 0 0\n"));
  // duplicate with inconsistent value
  CHECK_THROWS(parse_fcidump(
      "&FCI NORB=1,NELEC=2,\n&END\n1.0 1 1 0 0\n1.5 1 1 0 0\n"));
  // duplicate with consistent value is fine
  CHECK_NOTHROW(parse_fcidump(
      "&FCI NORB=1,NELEC=2,\n&END\n1.0 1 1 0 0\n1.0 1 1 0 0\n"));
}

TEST_CASE("fcidump round-trip on generated H4 file") {
  const auto &c = fixtures::h4();
  std::string text = write_fcidump(c.mo);
  MolecularIntegrals back = parse_fcidump(text);
  CHECK(back.n_orb() == c.mo.n_orb());
  CHECK(back.n_elec() == c.mo.n_elec());
  CHECK(back.e_core() == doctest::Approx(c.mo.e_core()).epsilon(1e-12));
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      CHECK(back.h(p, q) == doctest::Approx(c.mo.h(p, q)).epsilon(1e-12));
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
          CHECK(back.eri(p, q, r, s) ==
                doctest::Approx(c.mo.eri(p, q, r, s)).epsilon(1e-12));
    }
  // Canonical output: a second round-trip is byte-identical.
  CHECK(write_fcidump(back) == text);
}

TEST_CASE("write_fcidump with empty two-body tensor") {
  MolecularIntegrals ints(1, 2, 0.25);
  std::string text = write_fcidump(ints);
  CHECK(text.find("&FCI NORB=1") != std::string::npos);
  CHECK(text.find(" 0 0 0 0") != std::string::npos);
  CHECK(parse_fcidump(text).e_core() == doctest::Approx(0.25));
}

TEST_CASE("jordan_wigner number operator") {
  // Single orbital, h_00 = 1: each spin gives (1-Z)/2.
  MolecularIntegrals ints(1, 2, 0.0);
  ints.set_h(0, 0, 1.0);
  PauliSum h = jordan_wigner(ints);
  // Terms: I, Z0, Z1 with coefficients 1.0, -0.5, -0.5.
  REQUIRE(h.size() == 3);
  CHECK(trace_mean(h) == doctest::Approx(1.0));
  for (const auto &[c, w] : h.terms) {
    if (w.is_identity())
      CHECK(c == doctest::Approx(1.0));
    else {
      CHECK(w.weight() == 1);
      CHECK(c == doctest::Approx(-0.5));
    }
  }
}

TEST_CASE("jordan_wigner H2 term count and spectrum vs dense FCI oracle") {
  const auto &c = fixtures::h2();
  PauliSum h = jordan_wigner(c.mo);
  CHECK(h.n_qubits == 4);
  CHECK(h.size() == 15);

  Eigen::MatrixXcd dense = oracles::sum_matrix(h);
  CHECK((dense - dense.adjoint()).norm() < 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.137275944).epsilon(1e-6));
}

TEST_CASE("trace cross-check on random integrals") {
  for (int n_orb = 1; n_orb <= 4; ++n_orb)
    for (std::uint64_t seed : {7u, 8u}) {
      MolecularIntegrals ints = oracles::random_integrals(n_orb, seed);
      PauliSum h = jordan_wigner(ints);
      CHECK(trace_mean(h) ==
            doctest::Approx(fock_space_trace_mean(ints)).epsilon(1e-10));
    }
}

TEST_CASE("fock_space_trace_mean closed forms") {
  MolecularIntegrals empty(2, 2, 1.5);
  CHECK(fock_space_trace_mean(empty) == doctest::Approx(1.5));

  MolecularIntegrals one(1, 2, 0.25);
  one.set_h(0, 0, 1.0);
  CHECK(fock_space_trace_mean(one) == doctest::Approx(1.25));
}

TEST_CASE("H2 noise floor E_inf - E_0") {
  const auto &c = fixtures::h2();
  PauliSum h = jordan_wigner(c.mo);
  double e_inf = fock_space_trace_mean(c.mo);
  CHECK(e_inf == doctest::Approx(-0.099).epsilon(0.05));
  auto gs = ground_state(h);
  CHECK(e_inf - gs.value == doctest::Approx(1.02).epsilon(0.03));
}

TEST_CASE("particle number commutes with the mapped Hamiltonian") {
  for (std::uint64_t seed : {17u, 18u}) {
    MolecularIntegrals ints = oracles::random_integrals(2, seed);
    PauliSum h = jordan_wigner(ints);
    PauliSum num(4);
    num.add(2.0, PauliWord(4, 0, 0));
    for (int q = 0; q < 4; ++q)
      num.add(-0.5, PauliWord(4, 0, std::uint64_t{1} << q));
    Eigen::MatrixXcd H = oracles::sum_matrix(h);
    Eigen::MatrixXcd N = oracles::sum_matrix(num);
    CHECK((H * N - N * H).norm() < 1e-10);
  }
}

TEST_CASE("spin exchange symmetry of the mapping") {
  // Swapping alpha and beta labels is a basis permutation: spectra match.
  MolecularIntegrals ints = oracles::random_integrals(2, 23);
  PauliSum h = jordan_wigner(ints);
  Eigen::MatrixXcd H = oracles::sum_matrix(h);
  // Mode relabeling 2p <-> 2p+1 on Fock space: a qubit swap plus the
  // fermionic sign (-1) whenever both modes of a pair are occupied
  // (transposing two adjacent creation operators).
  std::size_t d = 16;
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    // index bits: qubit q at bit (3-q)
    auto bit = [&](int q) { return (i >> (3 - q)) & 1u; };
    std::size_t j = (bit(1) << 3) | (bit(0) << 2) | (bit(3) << 1) | bit(2);
    double sign = (bit(0) & bit(1)) ^ (bit(2) & bit(3)) ? -1.0 : 1.0;
    P(j, i) = sign;
  }
  CHECK((P * H * P.adjoint() - H).norm() < 1e-10);
}

TEST_CASE("determinant_energy closed forms") {
  MolecularIntegrals ints = oracles::random_integrals(2, 31, 2);
  CHECK(determinant_energy(ints, {}) == doctest::Approx(ints.e_core()));
  double expect = ints.e_core() + 2.0 * ints.h(0, 0) + ints.eri(0, 0, 0, 0);
  CHECK(determinant_energy(ints, {0}) == doctest::Approx(expect));
}

TEST_CASE("determinant_energy equals statevector expectation") {
  for (const auto *chain : {&fixtures::h2(), &fixtures::h4()}) {
    PauliSum h = jordan_wigner(chain->mo);
    StateVector hf =
        StateVector::basis_state(h.n_qubits, determinant_mask(chain->occ));
    CHECK(determinant_energy(chain->mo, chain->occ) ==
          doctest::Approx(expectation(h, hf)).epsilon(1e-10));
  }
  // Also for a non-aufbau occupation.
  const auto &c = fixtures::h4();
  PauliSum h = jordan_wigner(c.mo);
  std::vector<int> occ{0, 2};
  StateVector det = StateVector::basis_state(8, determinant_mask(occ));
  CHECK(determinant_energy(c.mo, occ) ==
        doctest::Approx(expectation(h, det)).epsilon(1e-10));
}

TEST_CASE("determinant_variance matches the statevector oracle") {
  MolecularIntegrals complete(1, 2, 0.3);
  complete.set_h(0, 0, -1.0);
  complete.set_eri(0, 0, 0, 0, 0.5);
  CHECK(determinant_variance(complete, {0}) == doctest::Approx(0.0));

  for (const auto *chain : {&fixtures::h2(), &fixtures::h4()}) {
    PauliSum h = jordan_wigner(chain->mo);
    StateVector hf =
        StateVector::basis_state(h.n_qubits, determinant_mask(chain->occ));
    CHECK(determinant_variance(chain->mo, chain->occ) ==
          doctest::Approx(variance(h, hf)).epsilon(1e-8));
  }
}

TEST_CASE("odd electron counts are rejected") {
  MolecularIntegrals ints(2, 3, 0.0);
  CHECK_THROWS_AS(determinant_energy(ints, {0}), std::invalid_argument);
  CHECK_THROWS_AS(determinant_variance(ints, {0}), std::invalid_argument);
}

}
