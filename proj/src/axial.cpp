#include "mixsynth/axial.hpp"

#include <cmath>

namespace mixsynth {

namespace {

void check_axial(const UnitaryMatrix& v) {
  if (v.dim() != 2) raise(ErrorCode::InvalidArgument, "axial targets are single-qubit");
  if (std::abs(v.matrix()(0, 1)) + std::abs(v.matrix()(1, 0)) > 1e-10)
    raise(ErrorCode::InvalidArgument, "target is not an axial (Z-diagonal) rotation");
}

struct PhasedExpansion {
  PauliExpansion coeffs;
  cplx phase;  // e^{i phi} with V'U = phase * (a_id 1 + i a_x X + ...)
};

PhasedExpansion expand_with_phase(const UnitaryMatrix& v, const UnitaryMatrix& u) {
  if (v.dim() != 2 || u.dim() != 2)
    raise(ErrorCode::InvalidArgument, "Pauli expansion is single-qubit");
  const ComplexMatrix m = v.matrix().adjoint() * u.matrix();
  const cplx c0 = 0.5 * m.trace();
  const cplx cx = 0.5 * (pauli_x() * m).trace();
  const cplx cy = 0.5 * (pauli_y() * m).trace();
  const cplx cz = 0.5 * (pauli_z() * m).trace();

  // det(M) = e^{2 i phi}; the two roots differ by the sign of a_id.
  const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  cplx phase = std::polar(1.0, 0.5 * std::atan2(det.imag(), det.real()));
  if ((c0 / phase).real() < 0.0) phase = -phase;

  PauliExpansion p;
  p.a_id = (c0 / phase).real();
  p.a_x = (cx / phase).imag();
  p.a_y = (cy / phase).imag();
  p.a_z = (cz / phase).imag();
  if (p.a_id <= 1e-12)
    raise(ErrorCode::PhaseDegenerate, "a_id ~ 0: the real-nonnegative gauge is not unique");

  const double norm2 = p.a_id * p.a_id + p.a_x * p.a_x + p.a_y * p.a_y + p.a_z * p.a_z;
  if (std::abs(norm2 - 1.0) > 1e-10)
    raise(ErrorCode::InvalidArgument, "expansion of a non-unitary product");

  // Reconstruction check.
  ComplexMatrix rebuilt = p.a_id * ComplexMatrix::identity(2);
  rebuilt += cplx(0.0, 1.0) * (p.a_x * pauli_x() + p.a_y * pauli_y() + p.a_z * pauli_z());
  rebuilt *= phase;
  if (operator_norm(rebuilt - m) > 1e-10)
    raise(ErrorCode::InvalidArgument, "Pauli expansion reconstruction failed");
  return {p, phase};
}

CostedUnitary rephased(const CostedUnitary& w, cplx phase) {
  CostedUnitary out = w;
  out.unitary = UnitaryMatrix((1.0 / phase) * w.unitary.matrix(), 1e-11);
  return out;
}

}  // namespace

PauliExpansion pauli_expand(const UnitaryMatrix& v, const UnitaryMatrix& u) {
  return expand_with_phase(v, u).coeffs;
}

RotationClass classify_rotation(const PauliExpansion& p) {
  return p.a_z >= 0.0 ? RotationClass::Over : RotationClass::Under;
}

UnitaryMatrix shifted_target(const UnitaryMatrix& v, double eps, int direction) {
  check_axial(v);
  if (!(eps > 0.0) || !(eps < 1.0)) raise(ErrorCode::InvalidArgument, "eps must lie in (0, 1)");
  if (direction != 1 && direction != -1)
    raise(ErrorCode::InvalidArgument, "direction must be +1 or -1");
  const double delta = direction * 2.0 * std::asin(0.5 * eps);
  return UnitaryMatrix(v.matrix() * expi(HermitianMatrix(delta * pauli_z())).matrix(), 1e-11);
}

AxialEnsemble build_axial_ensemble(const UnitaryMatrix& v, SynthesisOracle& oracle, double eps) {
  check_axial(v);
  if (!(eps > 0.0) || !(eps < 1.0)) raise(ErrorCode::InvalidArgument, "eps must lie in (0, 1)");

  const CostedUnitary first_raw = oracle.synth(v, eps);
  const PhasedExpansion alpha = expand_with_phase(v, first_raw.unitary);
  const CostedUnitary u1 = rephased(first_raw, alpha.phase);

  auto finish = [&](AxialEnsemble out) {
    if (out.ensemble.a > 2.0 * eps + 1e-12 || out.ensemble.b > 3.0 * eps * eps + 1e-12)
      raise(ErrorCode::InvalidState, "axial ensemble violates its diagnostic bounds");
    return out;
  };

  if (std::abs(alpha.coeffs.a_z) <= 1e-12) {
    // The answer sits on the rotation axis boundary: no second rotation.
    return finish(AxialEnsemble{
        assemble_ensemble(v, {{1.0, u1}}, std::abs(alpha.coeffs.a_z), "axial", eps, 0), 0.0, 0.0,
        alpha.coeffs, std::nullopt, true});
  }
  {
    // Shift AWAY from the first answer's rotation sense so that
    // ||U_1 - V'|| > ||V - V'|| = eps and the oracle must produce a new
    // unitary, which then lands on the opposite side of V.
    const int direction = alpha.coeffs.a_z > 0.0 ? -1 : 1;
    const double delta = direction * 2.0 * std::asin(0.5 * eps);
    const UnitaryMatrix vshift = shifted_target(v, eps, direction);

    const CostedUnitary second_raw = oracle.synth(vshift, eps);
    const PhasedExpansion beta = expand_with_phase(v, second_raw.unitary);
    const CostedUnitary u2 = rephased(second_raw, beta.phase);

    if (classify_rotation(beta.coeffs) == classify_rotation(alpha.coeffs))
      raise(ErrorCode::NoOppositeRotation,
            "second oracle answer has the same rotation sense as the first");

    const CostedUnitary u3 = conjugate_by_z(u1, oracle.gate_set());
    const CostedUnitary u4 = conjugate_by_z(u2, oracle.gate_set());

    const double q = alpha.coeffs.a_z / (alpha.coeffs.a_z - beta.coeffs.a_z);
    const double residual = std::abs((1.0 - q) * alpha.coeffs.a_z + q * beta.coeffs.a_z);

    std::vector<EnsembleMember> members;
    const double w1 = 0.5 * (1.0 - q), w2 = 0.5 * q;
    if (w1 > 0.0) members.push_back({w1, u1});
    if (w2 > 0.0) members.push_back({w2, u2});
    if (w1 > 0.0) members.push_back({w1, u3});
    if (w2 > 0.0) members.push_back({w2, u4});
    return finish(AxialEnsemble{
        assemble_ensemble(v, std::move(members), residual, "axial", eps, 0), q, delta,
        alpha.coeffs, beta.coeffs, false});
  }
}

double theorem2_bound(double eps) {
  if (!(eps > 0.0) || !(eps < 0.01))
    raise(ErrorCode::OutOfRegime, "theorem regime requires 0 < eps < 0.01");
  const double a = 2.0 * eps;
  const double b = 3.0 * eps * eps;
  return 0.5 * (a * a + 2.0 * b);
}

}  // namespace mixsynth
