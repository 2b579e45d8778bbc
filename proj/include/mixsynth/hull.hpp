#pragma once

// The convex hull finding loop: query the oracle, extract principal
// Hermitian displacements H_n of the answers relative to the target, find
// the minimum-norm point of Conv[{H_j}], and extrapolate through the origin
// until the hull captures it. The final simplex weights define a mixing
// ensemble whose channel approximates the target quadratically better than
// any single oracle answer.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mixsynth/gateset.hpp"
#include "mixsynth/linalg.hpp"

namespace mixsynth {

struct HullConfig {
  double eps = 1e-3;
  double r = 2.0;                 // extrapolation factor, > 1
  double mu_tol = -1.0;           // < 0 resolves to 1e-4 * eps^2
  int max_iter = 64;
  std::uint64_t seed = 0;         // recorded into outputs; oracles own theirs
  bool polish_operator_norm = false;

  double resolved_mu_tol() const { return mu_tol < 0.0 ? 1e-4 * eps * eps : mu_tol; }
  bool in_theorem_regime() const { return eps > 0.0 && eps < 0.01; }
  void validate() const;
};

// One loop iteration. n = 1 carries only H_1; n >= 2 carries the minimum
// norm point computed from {H_1..H_{n-1}} plus, unless the loop exited
// there, the extrapolation tau_n, the query W_n, the answer U_n and H_n.
struct HullIterationRecord {
  int n = 0;
  std::optional<HermitianMatrix> mu;
  double mu_op_norm = std::numeric_limits<double>::quiet_NaN();
  std::optional<HermitianMatrix> tau;
  std::optional<UnitaryMatrix> w;
  std::optional<UnitaryMatrix> u;
  std::optional<HermitianMatrix> h;
  double h_op_norm = std::numeric_limits<double>::quiet_NaN();
  double delta_op_norm = std::numeric_limits<double>::quiet_NaN();  // ||H_n - tau_n||
};

struct HullTrace {
  std::vector<HullIterationRecord> records;
  std::vector<double> final_weights;  // over oracle-answer order
  double final_mu_op_norm = std::numeric_limits<double>::quiet_NaN();
  bool terminated = false;
};

struct EnsembleMember {
  double p;
  CostedUnitary costed;
};

// {(U_j, p_j)} with target V. a = max_j ||U_j - V||, b = ||sum p_j U_j - V||
// are recomputed from the stored members; residual is ||sum p_j H_j||_op at
// loop exit where applicable.
struct MixingEnsemble {
  UnitaryMatrix target;
  std::vector<EnsembleMember> members;
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
  std::string construction;  // "hull" or "axial"
  double eps = 0.0;
  std::uint64_t seed = 0;
};

// Recomputes a and b and validates the simplex (probabilities in (0, 1]
// summing to 1 within 1e-12, members of one dimension).
MixingEnsemble assemble_ensemble(UnitaryMatrix target, std::vector<EnsembleMember> members,
                                 double residual, std::string construction, double eps,
                                 std::uint64_t seed);

struct MinNormPoint {
  HermitianMatrix point;
  std::vector<double> weights;  // over input order, zeros allowed
  double frobenius_norm;
  double op_norm;
};

// Minimum Frobenius-norm point of Conv[{H_j}] by Wolfe's algorithm, solved
// to a 1e-12 relative KKT residual; the operator norm of the minimizer is
// reported alongside (the two zero sets coincide, and every termination
// test downstream uses the operator norm). Throws NumericalStall if the
// KKT target is unreachable.
MinNormPoint min_norm_point(const std::vector<HermitianMatrix>& hs);

// Optional operator-norm polish: projected subgradient over the simplex
// seeded from the Frobenius solution; returns the better of the two.
MinNormPoint min_norm_point_polished(const std::vector<HermitianMatrix>& hs);

struct HullResult {
  MixingEnsemble ensemble;
  HullTrace trace;
};

class HullIterationError : public MixSynthError {
 public:
  explicit HullIterationError(HullTrace trace)
      : MixSynthError(ErrorCode::MaxIterExceeded, "hull loop hit the iteration cap"),
        trace_(std::move(trace)) {}
  const HullTrace& trace() const { return trace_; }

 private:
  HullTrace trace_;
};

// The full loop. Exits when ||mu_n||_op <= mu_tol; throws HullIterationError
// (with the trace attached) when max_iter is exceeded; oracle errors
// propagate.
HullResult run_hull(const UnitaryMatrix& v, SynthesisOracle& oracle, const HullConfig& cfg);

// Certified channel-error bound (1/2)[(c + c^2/2)^2 + c^2] with
// c = 3 eps + 7 eps^2; at most 10 eps^2 throughout the admissible regime
// 0 < eps < 0.01 (OutOfRegime otherwise).
double theorem1_bound(double eps);

}  // namespace mixsynth
