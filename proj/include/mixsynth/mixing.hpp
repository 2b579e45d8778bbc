#pragma once

// The two mixing lemmas as executable contracts: evaluate (a, b) for any
// ensemble, check the Hermitian-hull hypotheses, compute the implied channel
// error bounds, and sample or apply the mixed channel.

#include <cstdint>
#include <limits>
#include <vector>

#include "mixsynth/channels.hpp"
#include "mixsynth/hull.hpp"
#include "mixsynth/linalg.hpp"

namespace mixsynth {

struct LemmaHypotheses {
  bool simplex_ok = false;
  bool dimensions_ok = false;
  bool displacement_bound_ok = false;  // ||H_j|| <= c where applicable
};

struct LemmaReport {
  double a = 0.0;
  double b = 0.0;
  double c = std::numeric_limits<double>::quiet_NaN();  // set when Hermitian data available
  double bound_diamond_norm = 0.0;      // a^2 + 2b
  double bound_diamond_distance = 0.0;  // (a^2 + 2b)/2
  double residual = 0.0;                // ||sum w_j H_j||_op where applicable
  LemmaHypotheses hypotheses;
};

// a = max_j ||U_j - V||, b = ||(sum p_j U_j) - V|| in the operator norm.
LemmaReport lemma1_report(const MixingEnsemble& ens);

// Checks ||H_j|| <= c (HypothesisViolated with the failing index otherwise),
// reports the combination residual ||sum w_j H_j||_op rather than assuming
// it to vanish, and verifies both conclusions:
//   (1) ||e^{iH_j} - 1|| <= c + c^2/2 for every j,
//   (2) ||sum w_j e^{iH_j} - 1|| <= c^2/2 + residual.
// The returned (a, b) carry the constant mapping a = c + c^2/2, b = c^2/2.
LemmaReport lemma2_check(const std::vector<HermitianMatrix>& hs,
                         const std::vector<double>& weights, double c);

// n i.i.d. member indices drawn by inverse CDF over the members in stored
// order. PRNG: std::mt19937_64 with 53-bit uniforms ((x >> 11) * 2^-53),
// fully specified by the standard; test vectors live in the test suite.
std::vector<std::size_t> sample_ensemble(const MixingEnsemble& ens, int n, std::uint64_t seed);

// Exact weighted conjugation sum. rho must be a density matrix (Hermitian,
// PSD, unit trace within 1e-10); InvalidState otherwise.
ComplexMatrix apply_channel(const MixingEnsemble& ens, const ComplexMatrix& rho);

// View an ensemble as the channel object the certification stack consumes.
MixedUnitaryChannel as_channel(const MixingEnsemble& ens);

}  // namespace mixsynth
