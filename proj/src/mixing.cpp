#include "mixsynth/mixing.hpp"

#include <cmath>
#include <random>

namespace mixsynth {

LemmaReport lemma1_report(const MixingEnsemble& ens) {
  LemmaReport r;
  double total = 0.0;
  ComplexMatrix avg(ens.target.dim());
  r.hypotheses.dimensions_ok = true;
  for (const EnsembleMember& m : ens.members) {
    total += m.p;
    r.a = std::max(r.a, operator_norm(m.costed.unitary.matrix() - ens.target.matrix()));
    avg += m.p * m.costed.unitary.matrix();
  }
  r.b = operator_norm(avg - ens.target.matrix());
  r.hypotheses.simplex_ok = std::abs(total - 1.0) <= 1e-12;
  r.hypotheses.displacement_bound_ok = true;  // no Hermitian data on this path
  r.bound_diamond_norm = r.a * r.a + 2.0 * r.b;
  r.bound_diamond_distance = 0.5 * r.bound_diamond_norm;
  r.residual = ens.residual;
  return r;
}

LemmaReport lemma2_check(const std::vector<HermitianMatrix>& hs,
                         const std::vector<double>& weights, double c) {
  if (hs.empty() || hs.size() != weights.size())
    raise(ErrorCode::InvalidArgument, "operators and weights must match and be nonempty");
  if (!(c >= 0.0)) raise(ErrorCode::InvalidArgument, "c must be nonnegative");
  const int d = hs.front().dim();
  double total = 0.0;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    if (hs[j].dim() != d) raise(ErrorCode::DimensionMismatch, "operators of mixed dimension");
    if (weights[j] < 0.0) raise(ErrorCode::InvalidArgument, "weights must be nonnegative");
    total += weights[j];
  }
  if (std::abs(total - 1.0) > 1e-12) raise(ErrorCode::InvalidArgument, "weights must sum to 1");

  for (std::size_t j = 0; j < hs.size(); ++j)
    if (operator_norm(hs[j].matrix()) > c + 1e-12)
      raise(ErrorCode::HypothesisViolated,
            "||H_" + std::to_string(j) + "|| exceeds the bound c");

  ComplexMatrix combo(d);
  ComplexMatrix avg_exp(d);
  const ComplexMatrix id = ComplexMatrix::identity(d);
  for (std::size_t j = 0; j < hs.size(); ++j) {
    combo += weights[j] * hs[j].matrix();
    const UnitaryMatrix ej = expi(hs[j]);
    if (operator_norm(ej.matrix() - id) > c + 0.5 * c * c + 1e-12)
      raise(ErrorCode::InvalidState, "conclusion (1) failed despite valid hypotheses");
    avg_exp += weights[j] * ej.matrix();
  }
  LemmaReport r;
  r.residual = operator_norm(combo);
  if (operator_norm(avg_exp - id) > 0.5 * c * c + r.residual + 1e-12)
    raise(ErrorCode::InvalidState, "conclusion (2) failed despite valid hypotheses");

  r.c = c;
  r.a = c + 0.5 * c * c;
  r.b = 0.5 * c * c;
  r.bound_diamond_norm = r.a * r.a + 2.0 * r.b;
  r.bound_diamond_distance = 0.5 * r.bound_diamond_norm;
  r.hypotheses = {true, true, true};
  return r;
}

std::vector<std::size_t> sample_ensemble(const MixingEnsemble& ens, int n, std::uint64_t seed) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "sample count must be at least 1");
  std::vector<double> cdf;
  cdf.reserve(ens.members.size());
  double cum = 0.0;
  for (const EnsembleMember& m : ens.members) {
    cum += m.p;
    cdf.push_back(cum);
  }
  cdf.back() = 1.0;  // close the simplex exactly

  std::mt19937_64 engine(seed);
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    std::size_t idx = 0;
    while (idx + 1 < cdf.size() && u >= cdf[idx]) ++idx;
    out.push_back(idx);
  }
  return out;
}

ComplexMatrix apply_channel(const MixingEnsemble& ens, const ComplexMatrix& rho) {
  if (rho.dim() != ens.target.dim())
    raise(ErrorCode::DimensionMismatch, "state dimension differs from the ensemble");
  if (operator_norm(rho - rho.adjoint()) > 1e-10)
    raise(ErrorCode::InvalidState, "state is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-10)
    raise(ErrorCode::InvalidState, "state trace differs from 1");
  if (eig_hermitian(rho).values.front() < -1e-10)
    raise(ErrorCode::InvalidState, "state has a negative eigenvalue");

  ComplexMatrix out(rho.dim());
  for (const EnsembleMember& m : ens.members)
    out += m.p * (m.costed.unitary.matrix() * rho * m.costed.unitary.matrix().adjoint());
  return out;
}

MixedUnitaryChannel as_channel(const MixingEnsemble& ens) {
  std::vector<ChannelTerm> terms;
  terms.reserve(ens.members.size());
  for (const EnsembleMember& m : ens.members) terms.push_back({m.p, m.costed.unitary});
  return MixedUnitaryChannel(std::move(terms));
}

}  // namespace mixsynth
