#include <cmath>
#include <vector>

#include "doctest.h"
#include "mixsynth/channels.hpp"
#include "mixsynth/hull.hpp"
#include "support.hpp"

using namespace mixsynth;

namespace {

// Oracle returning the target itself: the degenerate exact-synthesis case.
class ExactOracle final : public SynthesisOracle {
 public:
  CostedUnitary synth(const UnitaryMatrix& target, double eps) override {
    (void)eps;
    return CostedUnitary{target, std::nullopt, 0.0, 0.0};
  }
  OracleDomain domain() const override { return {OracleDomain::Kind::FullUnitary, 2}; }
  const GateSet& gate_set() const override { return clifford_t_gateset(); }
};

MixedUnitaryChannel as_channel(const MixingEnsemble& e) {
  std::vector<ChannelTerm> terms;
  for (const EnsembleMember& m : e.members) terms.push_back({m.p, m.costed.unitary});
  return MixedUnitaryChannel(std::move(terms));
}

void check_trace_inequalities(const HullTrace& trace, double eps, doctest::String context) {
  INFO(context);
  const double c = 3.0 * eps + 7.0 * eps * eps;
  const double delta_bound = eps + 7.0 * eps * eps;
  double prev_mu = std::numeric_limits<double>::quiet_NaN();
  double prev_delta = std::numeric_limits<double>::quiet_NaN();
  for (const HullIterationRecord& rec : trace.records) {
    if (rec.h) CHECK(rec.h_op_norm <= c + 1e-12);
    if (rec.n >= 2) {
      REQUIRE(rec.mu.has_value());
      // Exponential convergence at the weakest admissible rate.
      CHECK(rec.mu_op_norm < 6.0 * eps * std::exp(-0.62548 * rec.n));
      if (rec.n == 2) {
        // mu_2 = H_1 and the first displacement is eps + eps^2/2 small.
        CHECK(rec.mu_op_norm <= eps + 0.5 * eps * eps);
      }
      if (rec.n > 2) {
        // Strict decrease and the per-step contraction inequality.
        CHECK(rec.mu_op_norm < prev_mu);
        CHECK(rec.mu_op_norm <= prev_mu * prev_delta / (prev_mu + 2.0 * eps));
      }
      if (!std::isnan(rec.delta_op_norm)) CHECK(rec.delta_op_norm <= delta_bound + 1e-12);
      prev_mu = rec.mu_op_norm;
      prev_delta = rec.delta_op_norm;
    }
  }
}

}  // namespace

TEST_CASE("min_norm_point on singletons and symmetric pairs") {
  const HermitianMatrix h(0.3 * pauli_x() + 0.1 * pauli_z());
  const MinNormPoint single = min_norm_point({h});
  CHECK(single.weights == std::vector<double>{1.0});
  CHECK(operator_norm(single.point.matrix() - h.matrix()) <= 1e-14);

  const MinNormPoint pair = min_norm_point({h, HermitianMatrix(-h.matrix())});
  CHECK(pair.op_norm <= 1e-14);
  CHECK(pair.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pair.weights[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("min_norm_point centroid of a symmetric triangle") {
  const HermitianMatrix hx(pauli_x());
  const HermitianMatrix hy(pauli_y());
  const HermitianMatrix hz(-pauli_x() - pauli_y());
  const MinNormPoint mnp = min_norm_point({hx, hy, hz});
  CHECK(mnp.op_norm <= 1e-13);
  for (double w : mnp.weights) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("min_norm_point boundary case keeps the KKT certificate") {
  // Origin outside the hull: closest point sits on a face.
  Rng rng(41);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<HermitianMatrix> hs;
    const int m = 2 + static_cast<int>(rng.index(4));
    for (int i = 0; i < m; ++i)
      hs.push_back(testsupport::random_hermitian_with_norm(2, rng.uniform(0.5, 2.0), rng));
    const MinNormPoint mnp = min_norm_point(hs);
    // KKT: <mu, H_j> >= ||mu||_F^2 for every j, and the weights reproduce mu.
    double muf2 = 0.0;
    for (const cplx& z : mnp.point.matrix().data()) muf2 += std::norm(z);
    for (const HermitianMatrix& h : hs) {
      const cplx ip = (mnp.point.matrix() * h.matrix()).trace();
      CHECK(ip.real() >= muf2 - 1e-10);
    }
    ComplexMatrix rebuilt(2);
    double total = 0.0;
    for (std::size_t j = 0; j < hs.size(); ++j) {
      rebuilt += mnp.weights[j] * hs[j].matrix();
      total += mnp.weights[j];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm(rebuilt - mnp.point.matrix()) <= 1e-12);
  }
}

TEST_CASE("exact oracle terminates immediately with a single member") {
  ExactOracle oracle;
  Rng rng(42);
  const UnitaryMatrix v = testsupport::random_unitary(2, rng);
  HullConfig cfg;
  cfg.eps = 1e-3;
  const HullResult res = run_hull(v, oracle, cfg);
  CHECK(res.ensemble.members.size() == 1);
  CHECK(res.ensemble.members[0].p == 1.0);
  CHECK(res.ensemble.b == 0.0);
  CHECK(res.trace.terminated);
  CHECK(res.trace.records.size() == 2);  // H_1 record plus the terminal mu record
}

TEST_CASE("synthetic hull run satisfies the lemma diagnostics") {
  SyntheticOracle oracle(7, {OracleDomain::Kind::FullUnitary, 2}, cost_model_rs());
  const UnitaryMatrix v = expi(HermitianMatrix(0.15 * pauli_z()));
  HullConfig cfg;
  cfg.eps = 1e-3;
  cfg.seed = 7;
  const HullResult res = run_hull(v, oracle, cfg);
  CHECK(res.trace.terminated);
  CHECK(res.ensemble.construction == "hull");

  const double c = 3.0 * cfg.eps + 7.0 * cfg.eps * cfg.eps;
  // Recompute a and b from the returned members, independent of the stored
  // diagnostics.
  double a = 0.0;
  ComplexMatrix avg(2);
  double total = 0.0;
  for (const EnsembleMember& m : res.ensemble.members) {
    a = std::max(a, operator_norm(m.costed.unitary.matrix() - v.matrix()));
    avg += m.p * m.costed.unitary.matrix();
    total += m.p;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a <= c + 0.5 * c * c);
  CHECK(operator_norm(avg - v.matrix()) <= 0.5 * c * c + 2.0 * cfg.resolved_mu_tol());
  CHECK(res.ensemble.residual <= cfg.resolved_mu_tol());
}

TEST_CASE("hull traces obey every recorded inequality") {
  int idx = 0;
  for (double eps : {1e-3, 1e-4}) {
    for (std::uint64_t seed : {3ULL, 7ULL, 11ULL}) {
      SyntheticOracle oracle(seed, {OracleDomain::Kind::FullUnitary, 2}, cost_model_rs());
      Rng rng(100 + seed);
      const UnitaryMatrix v = testsupport::random_unitary(2, rng);
      HullConfig cfg;
      cfg.eps = eps;
      cfg.seed = seed;
      const HullResult res = run_hull(v, oracle, cfg);
      check_trace_inequalities(res.trace, eps, doctest::String("run ") + doctest::toString(idx++));
    }
  }
}

TEST_CASE("hull ensembles certify below the theorem bound end to end") {
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    const double eps = 1e-3;
    SyntheticOracle oracle(seed, {OracleDomain::Kind::FullUnitary, 2}, cost_model_rs());
    Rng rng(200 + seed);
    const UnitaryMatrix v = testsupport::random_unitary(2, rng);
    HullConfig cfg;
    cfg.eps = eps;
    cfg.seed = seed;
    const HullResult res = run_hull(v, oracle, cfg);
    const DiamondCertificate cert = diamond_distance_upper(as_channel(res.ensemble), v, 1e-7);
    CHECK(cert.upper <= theorem1_bound(eps));
    CHECK(theorem1_bound(eps) <= 10.0 * eps * eps);
  }
}

TEST_CASE("polish flag never hurts the operator norm") {
  Rng rng(44);
  std::vector<HermitianMatrix> hs;
  for (int i = 0; i < 5; ++i)
    hs.push_back(testsupport::random_hermitian_with_norm(2, rng.uniform(0.5, 1.5), rng));
  const MinNormPoint plain = min_norm_point(hs);
  const MinNormPoint polished = min_norm_point_polished(hs);
  CHECK(polished.op_norm <= plain.op_norm + 1e-14);
}

TEST_CASE("theorem1_bound values and regime guard") {
  CHECK(theorem1_bound(0.009) <= 8.1e-4);
  // Small-eps limit of value / eps^2 is 9.
  CHECK(theorem1_bound(1e-6) / 1e-12 == doctest::Approx(9.0).epsilon(1e-4));
  CHECK_THROWS_AS(theorem1_bound(0.02), MixSynthError);
  CHECK_THROWS_AS(theorem1_bound(0.0), MixSynthError);
  try {
    theorem1_bound(0.02);
  } catch (const MixSynthError& e) {
    CHECK(e.code() == ErrorCode::OutOfRegime);
  }
}

TEST_CASE("iteration cap raises with the trace attached") {
  SyntheticOracle oracle(5, {OracleDomain::Kind::FullUnitary, 2}, cost_model_rs());
  Rng rng(45);
  const UnitaryMatrix v = testsupport::random_unitary(2, rng);
  HullConfig cfg;
  cfg.eps = 1e-3;
  cfg.max_iter = 2;
  try {
    run_hull(v, oracle, cfg);
    FAIL("expected HullIterationError");
  } catch (const HullIterationError& e) {
    CHECK(e.code() == ErrorCode::MaxIterExceeded);
    CHECK(e.trace().records.size() >= 2);
    CHECK_FALSE(e.trace().terminated);
  }
}
