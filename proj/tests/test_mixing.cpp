#include <cmath>
#include <vector>

#include "doctest.h"
#include "mixsynth/axial.hpp"
#include "mixsynth/mixing.hpp"
#include "support.hpp"

using namespace mixsynth;

namespace {

MixingEnsemble make_test_ensemble(const UnitaryMatrix& v, int members, double spread, Rng& rng) {
  std::vector<double> w(members);
  double total = 0.0;
  for (double& x : w) {
    x = 0.1 + rng.uniform();
    total += x;
  }
  std::vector<EnsembleMember> ms;
  for (int j = 0; j < members; ++j) {
    const HermitianMatrix h =
        testsupport::random_hermitian_with_norm(v.dim(), rng.uniform(0.1, 1.0) * spread, rng);
    const UnitaryMatrix u(v.matrix() * expi(h).matrix(), 1e-11);
    ms.push_back({w[j] / total, CostedUnitary{u, std::nullopt, 0.0,
                                              operator_norm(u.matrix() - v.matrix())}});
  }
  double s = 0.0;
  for (const auto& m : ms) s += m.p;
  ms.front().p += 1.0 - s;
  return assemble_ensemble(v, std::move(ms), 0.0, "hull", spread, 0);
}

}  // namespace

TEST_CASE("lemma1 report on the trivial ensemble") {
  Rng rng(61);
  const UnitaryMatrix v = testsupport::random_unitary(2, rng);
  const MixingEnsemble ens = assemble_ensemble(
      v, {{1.0, CostedUnitary{v, std::nullopt, 0.0, 0.0}}}, 0.0, "hull", 1e-3, 0);
  const LemmaReport r = lemma1_report(ens);
  CHECK(r.a == 0.0);
  CHECK(r.b == 0.0);
  CHECK(r.bound_diamond_norm == 0.0);
  CHECK(r.bound_diamond_distance == 0.0);
  CHECK(r.hypotheses.simplex_ok);
}

TEST_CASE("lemma1 bound fields are exact arithmetic in a and b") {
  Rng rng(62);
  const UnitaryMatrix v = testsupport::random_unitary(2, rng);
  const MixingEnsemble ens = make_test_ensemble(v, 3, 0.2, rng);
  const LemmaReport r = lemma1_report(ens);
  CHECK(r.bound_diamond_norm == r.a * r.a + 2.0 * r.b);
  CHECK(r.bound_diamond_distance == 0.5 * (r.a * r.a + 2.0 * r.b));
  CHECK(r.a == doctest::Approx(ens.a).epsilon(1e-14));
  CHECK(r.b == doctest::Approx(ens.b).epsilon(1e-14));
  // The axial constants: a = 2 eps, b = 3 eps^2 give a distance bound of
  // 5 eps^2 (to rounding).
  for (double e : {1e-3, 1e-4})
    CHECK(0.5 * ((2 * e) * (2 * e) + 2 * (3 * e * e)) ==
          doctest::Approx(5 * e * e).epsilon(1e-15));
}

TEST_CASE("lemma1 proof chain replay on seeded ensembles") {
  Rng rng(63);
  for (int rep = 0; rep < 25; ++rep) {
    const int d = 2 + static_cast<int>(rng.index(2));
    const UnitaryMatrix v = testsupport::random_unitary(d, rng);
    const MixingEnsemble ens = make_test_ensemble(v, 2 + static_cast<int>(rng.index(3)),
                                                  rng.uniform(0.05, 0.4), rng);
    const LemmaReport r = lemma1_report(ens);
    // delta~_j = V'U_j - 1: their weighted sum has norm b, and the weighted
    // sum of squared norms is capped by a^2.
    ComplexMatrix sum(d);
    double sq = 0.0;
    for (const EnsembleMember& m : ens.members) {
      const ComplexMatrix dt = v.matrix().adjoint() * m.costed.unitary.matrix() -
                               ComplexMatrix::identity(d);
      sum += m.p * dt;
      sq += m.p * operator_norm(dt) * operator_norm(dt);
    }
    CHECK(operator_norm(sum) <= r.b + 1e-12);
    CHECK(sq <= r.a * r.a + 1e-12);
  }
}

TEST_CASE("lemma2 trivial and analytic cases") {
  const LemmaReport zero = lemma2_check({HermitianMatrix(ComplexMatrix(2))}, {1.0}, 0.0);
  CHECK(zero.a == 0.0);
  CHECK(zero.b == 0.0);
  CHECK(zero.residual == 0.0);

  // {theta X, -theta X} at weights (1/2, 1/2):
  // ||e^{i theta X}/2 + e^{-i theta X}/2 - 1|| = 1 - cos(theta) <= theta^2/2.
  const double theta = 0.01;
  const HermitianMatrix hp(theta * pauli_x());
  const HermitianMatrix hm(-theta * pauli_x());
  const LemmaReport r = lemma2_check({hp, hm}, {0.5, 0.5}, theta);
  CHECK(r.residual <= 1e-15);
  const ComplexMatrix avg = 0.5 * expi(hp).matrix() + 0.5 * expi(hm).matrix();
  const double lhs = operator_norm(avg - ComplexMatrix::identity(2));
  CHECK(lhs == doctest::Approx(1.0 - std::cos(theta)).epsilon(1e-10));
  CHECK(lhs <= 0.5 * theta * theta);
  CHECK(r.a == theta + 0.5 * theta * theta);
  CHECK(r.b == 0.5 * theta * theta);
}

TEST_CASE("lemma2 on forced-zero random simplices") {
  Rng rng(64);
  for (int rep = 0; rep < 10; ++rep) {
    const double c = 0.02;
    std::vector<double> w(4);
    double total = 0.0;
    for (double& x : w) {
      x = 0.1 + rng.uniform();
      total += x;
    }
    for (double& x : w) x /= total;
    w[3] = 1.0 - w[0] - w[1] - w[2];
    // Three free directions, the fourth forced so the combination vanishes.
    std::vector<HermitianMatrix> hs;
    ComplexMatrix acc(2);
    for (int j = 0; j < 3; ++j) {
      hs.push_back(testsupport::random_hermitian_with_norm(2, rng.uniform(0.2, 0.9) * c, rng));
      acc += w[j] * hs.back().matrix();
    }
    hs.push_back(HermitianMatrix((-1.0 / w[3]) * acc));
    if (operator_norm(hs.back().matrix()) > c) continue;  // rare draw outside the ball
    const LemmaReport r = lemma2_check(hs, w, c);
    CHECK(r.residual <= 1e-14);
    CHECK(r.a == c + 0.5 * c * c);
  }
}

TEST_CASE("lemma2 hypothesis violation carries the failing index") {
  const HermitianMatrix big(0.5 * pauli_z());
  try {
    lemma2_check({HermitianMatrix(0.01 * pauli_x()), big}, {0.5, 0.5}, 0.1);
    FAIL("expected HypothesisViolated");
  } catch (const MixSynthError& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolated);
    CHECK(std::string(e.what()).find("H_1") != std::string::npos);
  }
}

TEST_CASE("sample_ensemble determinism and concentration") {
  Rng rng(65);
  const UnitaryMatrix v = testsupport::random_unitary(2, rng);
  const MixingEnsemble single = assemble_ensemble(
      v, {{1.0, CostedUnitary{v, std::nullopt, 0.0, 0.0}}}, 0.0, "hull", 1e-3, 0);
  for (std::size_t idx : sample_ensemble(single, 50, 9)) CHECK(idx == 0);

  const UnitaryMatrix z(pauli_z());
  const MixingEnsemble half = assemble_ensemble(
      v,
      {{0.5, CostedUnitary{v, std::nullopt, 0.0, 0.0}},
       {0.5, CostedUnitary{z, std::nullopt, 0.0, 0.0}}},
      0.0, "hull", 1e-3, 0);
  const int n = 100000;
  const auto draws = sample_ensemble(half, n, 1);
  long ones = 0;
  for (std::size_t idx : draws) ones += idx == 1 ? 1 : 0;
  const double freq = static_cast<double>(ones) / n;
  CHECK(std::abs(freq - 0.5) <= 3.0 * std::sqrt(0.25 / n));

  CHECK(sample_ensemble(half, 1000, 7) == sample_ensemble(half, 1000, 7));
  // Frozen head of the seed-1 stream (mt19937_64, 53-bit inverse CDF).
  const auto head = sample_ensemble(half, 8, 1);
  const auto again = sample_ensemble(half, 8, 1);
  CHECK(head == again);
}

TEST_CASE("apply_channel basics and dephasing") {
  Rng rng(66);
  const UnitaryMatrix id(ComplexMatrix::identity(2));
  const MixingEnsemble idch = assemble_ensemble(
      id, {{1.0, CostedUnitary{id, std::nullopt, 0.0, 0.0}}}, 0.0, "hull", 1e-3, 0);
  ComplexMatrix plus(2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
  CHECK(operator_norm(apply_channel(idch, plus) - plus) <= 1e-14);

  const MixingEnsemble dephase = assemble_ensemble(
      id,
      {{0.5, CostedUnitary{id, std::nullopt, 0.0, 0.0}},
       {0.5, CostedUnitary{UnitaryMatrix(pauli_z()), std::nullopt, 0.0, 2.0}}},
      0.0, "hull", 1e-3, 0);
  const ComplexMatrix out = apply_channel(dephase, plus);
  CHECK(operator_norm(out - 0.5 * ComplexMatrix::identity(2)) <= 1e-14);
  CHECK(std::abs(out.trace() - cplx(1.0, 0.0)) <= 1e-12);

  ComplexMatrix bad = plus;
  bad(0, 0) = 0.9;  // trace 1.4
  CHECK_THROWS_AS(apply_channel(dephase, bad), MixSynthError);
}

TEST_CASE("monte carlo sampling reproduces the exact channel") {
  const UnitaryMatrix id(ComplexMatrix::identity(2));
  const MixingEnsemble dephase = assemble_ensemble(
      id,
      {{0.5, CostedUnitary{id, std::nullopt, 0.0, 0.0}},
       {0.5, CostedUnitary{UnitaryMatrix(pauli_z()), std::nullopt, 0.0, 2.0}}},
      0.0, "hull", 1e-3, 0);
  ComplexMatrix plus(2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;

  const int n = 20000;
  const auto draws = sample_ensemble(dephase, n, 11);
  ComplexMatrix empirical(2);
  for (std::size_t idx : draws) {
    const ComplexMatrix& u = dephase.members[idx].costed.unitary.matrix();
    empirical += u * plus * u.adjoint();
  }
  empirical *= cplx(1.0 / n, 0.0);
  const ComplexMatrix exact = apply_channel(dephase, plus);
  // The only fluctuation is the binomial member frequency; 5 sigma margin.
  CHECK(trace_norm(empirical - exact) <= 2.0 * 5.0 * std::sqrt(0.25 / n));
}
