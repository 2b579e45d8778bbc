#pragma once

// Mixed-unitary channels, Choi matrices, and diamond-distance certification
// against a target unitary channel. The upper bound comes from the dual
// semidefinite program for the diamond norm, solved by a first-order
// splitting method (alternating PSD-cone projections with a closed-form
// projection onto the affine constraint set); the lower bound from a seeded
// sweep of pure states on the doubled system. Any returned upper bound is
// certified: it is the objective value of an exactly feasible dual point.

#include <cstdint>
#include <string>
#include <vector>

#include "mixsynth/linalg.hpp"

namespace mixsynth {

struct ChannelTerm {
  double probability;
  UnitaryMatrix unitary;
};

// E(rho) = sum_j p_j U_j rho U_j'. Probabilities in (0, 1], summing to 1
// within 1e-12; all unitaries of one dimension.
class MixedUnitaryChannel {
 public:
  explicit MixedUnitaryChannel(std::vector<ChannelTerm> terms);
  static MixedUnitaryChannel single(const UnitaryMatrix& u);

  const std::vector<ChannelTerm>& terms() const { return terms_; }
  int dim() const { return terms_.front().unitary.dim(); }

 private:
  std::vector<ChannelTerm> terms_;
};

// Choi matrix under the convention J(Phi) = sum_{kl} Phi(|k><l|) (x) |k><l|
// (output factor first, unnormalized). Hermitian within 1e-10; a channel
// difference additionally has trace 0 within 1e-10.
struct ChoiMatrix {
  ComplexMatrix matrix;  // dimension D^2
  std::string source;
  bool is_difference = false;

  static ChoiMatrix validated(ComplexMatrix m, std::string source, bool is_difference);
};

struct DiamondCertificate {
  double lower = 0.0;
  double upper = 0.0;
  double tol = 0.0;
  long iterations = 0;
  double residual = 0.0;
  std::string method;
  bool stalled = false;

  // lower <= upper + 1e-7 enforced here.
  static DiamondCertificate validated(DiamondCertificate c);
};

// Choi matrix of E - V.
ChoiMatrix choi_of_difference(const MixedUnitaryChannel& e, const UnitaryMatrix& v);

// Certified upper bound on d_diamond(E, V) = (1/2)||E - V||_diamond.
// Requires D <= 3 and tol >= 1e-7. On hitting the iteration cap the
// certificate is still returned, flagged stalled with the honest residual.
DiamondCertificate diamond_distance_upper(const MixedUnitaryChannel& e, const UnitaryMatrix& v,
                                          double tol);

// Valid lower bound on d_diamond(E, V): half the best 1-norm seen over the
// maximally entangled state, 1000 seeded random pure states on the doubled
// system, and local refinement around the best candidate. Requires D <= 3.
double diamond_distance_lower(const MixedUnitaryChannel& e, const UnitaryMatrix& v);

// Exact diamond distance between two unitary channels:
// sqrt(1 - d^2) with d the distance from 0 to Conv(spec(V'U)) in the plane.
double unitary_pair_diamond(const UnitaryMatrix& u, const UnitaryMatrix& v);

// Row-major vectorization: vec(M)[a*D + k] = M(a, k).
std::vector<cplx> vec_row_major(const ComplexMatrix& m);

}  // namespace mixsynth
