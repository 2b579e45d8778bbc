#pragma once

// Closed-form four-unitary mixing for Z-axis rotation targets: pair an
// over-rotation with an under-rotation obtained against a shifted target,
// add their Z-conjugates to cancel the X/Y components, and weight the pair
// analytically so the Z component cancels too.

#include <optional>

#include "mixsynth/gateset.hpp"
#include "mixsynth/hull.hpp"
#include "mixsynth/linalg.hpp"

namespace mixsynth {

// Coefficients of V'U = a_id 1 + i a_x X + i a_y Y + i a_z Z after fixing
// the global phase so a_id is real and nonnegative. Unit Euclidean norm.
struct PauliExpansion {
  double a_id = 1.0;
  double a_x = 0.0;
  double a_y = 0.0;
  double a_z = 0.0;
};

enum class RotationClass { Over, Under };

// Throws PhaseDegenerate when a_id ~ 0 leaves the sign convention ambiguous.
PauliExpansion pauli_expand(const UnitaryMatrix& v, const UnitaryMatrix& u);

// Over-rotation iff a_z >= 0 (the boundary counts as over).
RotationClass classify_rotation(const PauliExpansion& p);

// V' = V e^{i delta Z} with delta = direction * 2 asin(eps/2), which makes
// ||V - V'|| = eps exactly. `direction` must be +1 or -1; the axial
// construction passes the sign opposite to the first answer's rotation
// sense, which is what forces the oracle to produce a distinct unitary.
UnitaryMatrix shifted_target(const UnitaryMatrix& v, double eps, int direction);

struct AxialEnsemble {
  MixingEnsemble ensemble;
  double q = 0.0;
  double delta = 0.0;
  PauliExpansion alpha;
  std::optional<PauliExpansion> beta;
  bool single_member = false;
};

// Theorem-of-the-four-unitaries construction. Members are stored with their
// global phase fixed so each Tr(V'U_j) is real nonnegative; the mixture
// algebra (and the a <= 2 eps, b <= 3 eps^2 diagnostics, validated here)
// holds in that gauge. Throws NoOppositeRotation when the second answer
// lands on the same side as the first.
AxialEnsemble build_axial_ensemble(const UnitaryMatrix& v, SynthesisOracle& oracle, double eps);

// (1/2)(a^2 + 2b) with a = 2 eps, b = 3 eps^2, i.e. 5 eps^2.
// OutOfRegime unless 0 < eps < 0.01.
double theorem2_bound(double eps);

}  // namespace mixsynth
