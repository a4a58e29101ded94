#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qcvur/dm_model.hpp"
#include "qcvur/errors.hpp"
#include "qcvur/random_states.hpp"
#include "qcvur/relations.hpp"

using namespace qcvur;

namespace {

DensityOperator ket0() {
  const cplx amps[] = {1, 0};
  return DensityOperator::pure(amps, {2});
}

DensityOperator bell() {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx amps[] = {r, 0, 0, r};
  return DensityOperator::pure(amps, {2, 2});
}

ComplexMatrix rotated(double phi) {
  return pauli::z() * cplx{std::cos(phi), 0} + pauli::x() * cplx{std::sin(phi), 0};
}

}  // namespace

TEST_CASE("Schrodinger relation") {
  SUBCASE("pure state saturates") {
    const SchrodingerResult r = schrodinger_bound(ket0(), Observable(pauli::x(), 0), Observable(pauli::y(), 0));
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(1.0));
  }
  SUBCASE("maximally mixed state") {
    const SchrodingerResult r = schrodinger_bound(DensityOperator::maximally_mixed({2}), Observable(pauli::x(), 0),
                                                  Observable(pauli::y(), 0));
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(std::abs(r.rhs) <= 1e-15);
  }
  SUBCASE("random cases") {
    RandomStates rng(31);
    for (int i = 0; i < 500; ++i) {
      const std::size_t dim = i % 2 == 0 ? 2 : 3;
      const DensityOperator rho = rng.mixed_state({dim});
      const SchrodingerResult r =
          schrodinger_bound(rho, Observable(rng.hermitian(dim), 0), Observable(rng.hermitian(dim), 0));
      CHECK(r.lhs >= r.rhs - 1e-10);
    }
  }
}

TEST_CASE("maximal overlap") {
  CHECK(maximal_overlap_c(Observable(pauli::x(), 0), Observable(pauli::z(), 0)) == doctest::Approx(0.5));
  CHECK(maximal_overlap_c(Observable(pauli::z(), 0), Observable(pauli::z(), 0)) == doctest::Approx(1.0));
  for (double phi : {0.1, 0.7, 1.3, 2.0, 2.9}) {
    const double expected = std::max(std::pow(std::cos(phi / 2), 2), std::pow(std::sin(phi / 2), 2));
    CHECK(maximal_overlap_c(Observable(pauli::z(), 0), Observable(rotated(phi), 0)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(maximal_overlap_c(Observable(ComplexMatrix::identity(2), 0), Observable(pauli::z(), 0)),
                  DegeneracyError);
  CHECK_THROWS_AS(maximal_overlap_c(Observable(pauli::x(), 0), Observable(pauli::z(), 1)), SubsystemError);
}

TEST_CASE("entropic relation") {
  const Observable r(pauli::x(), 0);
  const Observable s(pauli::z(), 0);
  SUBCASE("maximally mixed") {
    const QmEurResult e = qm_eur(DensityOperator::maximally_mixed({2, 2}), r, s);
    CHECK(e.h_rb == doctest::Approx(1.0));
    CHECK(e.h_sb == doctest::Approx(1.0));
    CHECK(e.h_ab == doctest::Approx(1.0));
    CHECK(e.overlap_bound == doctest::Approx(1.0));
    CHECK(e.rhs == doctest::Approx(2.0));
    REQUIRE(e.u_eur.has_value());
    CHECK(*e.u_eur == doctest::Approx(1.0));
  }
  SUBCASE("Bell state has an undefined ratio") {
    const QmEurResult e = qm_eur(bell(), r, s);
    CHECK(std::abs(e.h_rb) <= 1e-10);
    CHECK(std::abs(e.h_sb) <= 1e-10);
    CHECK(e.h_ab == doctest::Approx(-1.0));
    CHECK(std::abs(e.rhs) <= 1e-10);
    CHECK_FALSE(e.u_eur.has_value());
  }
  SUBCASE("thermal state") {
    const QmEurResult e = qm_eur(dm::thermal_state(dm::ModelParams(1, 1, 1)), r, s);
    CHECK(std::abs(e.h_rb - 0.52933) <= 1e-4);
    CHECK(std::abs(e.h_sb - 0.59588) <= 1e-4);
    CHECK(std::abs(e.h_ab - 0.0060632) <= 1e-6);
    CHECK(std::abs(e.rhs - 1.0060632) <= 1e-6);
    REQUIRE(e.u_eur.has_value());
    CHECK(std::abs(*e.u_eur - 1.11842) <= 1e-4);
  }
  SUBCASE("memory on the first subsystem") {
    RandomStates rng(32);
    const DensityOperator rho = rng.mixed_state({2, 2});
    const QmEurResult a = qm_eur(rho, r, s);
    const std::size_t swap_perm[] = {0, 2, 1, 3};
    ComplexMatrix sw(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) sw(i, k) = rho.matrix()(swap_perm[i], swap_perm[k]);
    const QmEurResult b = qm_eur(DensityOperator(sw, {2, 2}), Observable(pauli::x(), 1), Observable(pauli::z(), 1));
    CHECK(std::abs(a.h_rb - b.h_rb) <= 1e-10);
    CHECK(std::abs(a.h_sb - b.h_sb) <= 1e-10);
    CHECK(std::abs(a.rhs - b.rhs) <= 1e-10);
  }
  SUBCASE("random cases") {
    RandomStates rng(33);
    for (int i = 0; i < 200; ++i) {
      const DensityOperator rho = i % 2 == 0 ? rng.mixed_state({2, 2}) : rng.pure_state({2, 2});
      const QmEurResult e = qm_eur(rho, Observable(rng.hermitian(2), 0), Observable(rng.hermitian(2), 0));
      CHECK(e.h_rb + e.h_sb >= e.rhs - 1e-9);
      if (e.u_eur && e.rhs > 0) CHECK(*e.u_eur >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("variance-sum lower bound") {
  const ComplexMatrix sx = pauli::x();
  const ComplexMatrix sz = pauli::z();
  const ComplexMatrix o = sx + sz;
  CHECK(l_tra(ket0(), sx, sz, o, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(l_tra(ket0(), sx, sz, sx, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  const DensityOperator mixed = DensityOperator::maximally_mixed({2});
  CHECK(l_tra(mixed, sx, sz, o, 0.5) == doctest::Approx(1.0 + std::cos(0.5)).epsilon(1e-14));
  CHECK(std::abs(l_tra(mixed, sx, sz, o, std::numbers::pi)) <= 1e-14);
  CHECK_THROWS_AS(l_tra(ket0(), sx, sz, ComplexMatrix::diagonal(std::vector<double>{0, 1}), 0.5),
                  DegenerateOperator);

  RandomStates rng(34);
  for (int i = 0; i < 500; ++i) {
    const DensityOperator rho = rng.mixed_state({2});
    const ComplexMatrix a = rng.hermitian(2);
    const ComplexMatrix b = rng.hermitian(2);
    const double bound = l_tra(rho, a, b, rng.general(2), rng.uniform(0.0, 2 * std::numbers::pi));
    CHECK(variance(rho, Observable(a, 0)) + variance(rho, Observable(b, 0)) >= bound - 1e-10);
  }
}

TEST_CASE("setup validation") {
  MeasurementSetup s = default_setup();
  CHECK_NOTHROW(s.validate());
  CHECK(s.measured_subsystem() == 0);
  SUBCASE("wrong K") {
    s.pairs.pop_back();
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }
  SUBCASE("Q on different subsystems") {
    s.pairs[1] = MeasurementPair{Observable(pauli::z(), 1), {Observable(pauli::z(), 0)}};
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }
  SUBCASE("no controls") {
    s.pairs[0].controls.clear();
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }
  SUBCASE("theta out of range") {
    s.theta = 7.0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }
}

TEST_CASE("control-assisted relation") {
  const MeasurementSetup setup = default_setup(0.5);
  SUBCASE("high-temperature limit") {
    const QcVurResult r = qc_vur(dm::thermal_state(dm::ModelParams(1, 1, 1e6)), setup);
    CHECK(std::abs(r.lhs - 2.0) <= 1e-5);
    CHECK(std::abs(r.w - (1.0 + std::cos(0.5))) <= 1e-5);
    REQUIRE(r.u.has_value());
    CHECK(std::abs(*r.u - 2.0 / (1.0 + std::cos(0.5))) <= 1e-5);
  }
  SUBCASE("model point against the correlator oracle") {
    const oracle::XState x = oracle::x_state(1, 1, 1);
    const double cxx = x.cxx(), czz = x.czz();
    const double lhs = 2.0 - cxx * cxx - czz * czz;
    const double w = 1.0 + std::cos(0.5) - cxx * cxx - czz * czz;
    const QcVurResult r = qc_vur(dm::thermal_state(dm::ModelParams(1, 1, 1)), setup);
    CHECK(std::abs(r.lhs - lhs) <= 1e-10);
    CHECK(std::abs(r.w - w) <= 1e-10);
    CHECK(std::abs(r.l_tra - (1.0 + std::cos(0.5))) <= 1e-10);
    REQUIRE(r.u.has_value());
    CHECK(std::abs(*r.u - lhs / w) <= 1e-10);
    CHECK(std::abs(r.lhs - 1.205631622584718) <= 1e-10);
    CHECK(std::abs(r.w - 1.0832141844750909) <= 1e-10);
    CHECK(std::abs(*r.u - 1.1130131416890083) <= 1e-10);
  }
  SUBCASE("ground-state singlet") {
    const QcVurResult r = qc_vur(dm::thermal_state(dm::ModelParams(0, 1, dm::kMinTemperature)), setup);
    CHECK(std::abs(r.lhs) <= 1e-5);
    CHECK(std::abs(r.w - (std::cos(0.5) - 1.0)) <= 1e-6);
    REQUIRE(r.u.has_value());
    CHECK(std::abs(*r.u) <= 1e-5);
  }
  SUBCASE("random multipartite cases") {
    RandomStates rng(35);
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
      const DensityOperator rho = rng.mixed_state(std::vector<std::size_t>(n, 2));
      const MeasurementSetup s = random_setup(rng, n, 1 + static_cast<std::size_t>(i) % (n - 1));
      const QcVurResult r = qc_vur(rho, s);
      CHECK(r.lhs >= r.w - 1e-9);
      double total = 0.0;
      for (const MeasurementPair& p : s.pairs) total += variance(rho, p.q);
      CHECK(std::abs(r.lhs + r.subtracted - total) <= 1e-9);
      CHECK(total >= r.l_tra - 1e-9);
    }
  }
}
