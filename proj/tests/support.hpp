#pragma once

// Shared test helpers: seeded generators plus independent numerical oracles.
// The oracles (power iteration, one-sided Jacobi SVD) deliberately share no
// code with the library decompositions they are used to check.

#include <vector>

#include "mixsynth/channels.hpp"
#include "mixsynth/linalg.hpp"
#include "mixsynth/rng.hpp"

namespace testsupport {

using mixsynth::ComplexMatrix;
using mixsynth::HermitianMatrix;
using mixsynth::MixedUnitaryChannel;
using mixsynth::Rng;
using mixsynth::UnitaryMatrix;
using mixsynth::cplx;

ComplexMatrix random_matrix(int dim, Rng& rng);
HermitianMatrix random_hermitian(int dim, Rng& rng);
// Hermitian with operator norm exactly `norm`.
HermitianMatrix random_hermitian_with_norm(int dim, double norm, Rng& rng);
UnitaryMatrix random_unitary(int dim, Rng& rng);
// v displaced by a random Hermitian direction of the given operator norm.
UnitaryMatrix nearby_unitary(const UnitaryMatrix& v, double dist, Rng& rng);
// Mixed-unitary channel with `members` random terms near v.
MixedUnitaryChannel random_channel_near(const UnitaryMatrix& v, int members, double spread,
                                        Rng& rng);

// Largest singular value from power iteration on M'M.
double power_iteration_norm(const ComplexMatrix& m, int iters = 4000);

// Singular values (descending) from an independent one-sided Jacobi SVD.
std::vector<double> jacobi_svd_singular_values(const ComplexMatrix& m);

// Brute-force Clifford+T machinery: a flat list with pairwise phase-blind
// comparison, sharing no fingerprint hashing with the library.
struct BruteSet {
  std::vector<ComplexMatrix> elements;
  bool contains(const ComplexMatrix& m) const;
  void insert(const ComplexMatrix& m);
};

// Closure of <H, S> modulo global phase (the 24 Cliffords).
BruteSet brute_clifford_closure();
// All products with up to tmax T gates interleaved with arbitrary Cliffords,
// deduplicated modulo phase.
BruteSet brute_interleavings(int tmax);

}  // namespace testsupport
