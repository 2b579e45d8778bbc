#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mixsynth/gateset.hpp"

namespace testsupport {

ComplexMatrix random_matrix(int dim, Rng& rng) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return m;
}

HermitianMatrix random_hermitian(int dim, Rng& rng) {
  const ComplexMatrix a = random_matrix(dim, rng);
  return HermitianMatrix(0.5 * (a + a.adjoint()));
}

HermitianMatrix random_hermitian_with_norm(int dim, double norm, Rng& rng) {
  const HermitianMatrix h = random_hermitian(dim, rng);
  const double s = mixsynth::operator_norm(h.matrix());
  return HermitianMatrix((norm / s) * h.matrix());
}

UnitaryMatrix random_unitary(int dim, Rng& rng) {
  return mixsynth::expi(random_hermitian(dim, rng));
}

UnitaryMatrix nearby_unitary(const UnitaryMatrix& v, double dist, Rng& rng) {
  const HermitianMatrix h = random_hermitian_with_norm(v.dim(), dist, rng);
  return UnitaryMatrix(v.matrix() * mixsynth::expi(h).matrix(), 1e-11);
}

MixedUnitaryChannel random_channel_near(const UnitaryMatrix& v, int members, double spread,
                                        Rng& rng) {
  std::vector<double> w(members);
  double total = 0.0;
  for (double& x : w) {
    x = 0.05 + rng.uniform();
    total += x;
  }
  std::vector<mixsynth::ChannelTerm> terms;
  for (int j = 0; j < members; ++j)
    terms.push_back({w[j] / total, nearby_unitary(v, rng.uniform(0.1, 1.0) * spread, rng)});
  double s = 0.0;
  for (const auto& t : terms) s += t.probability;
  terms.front().probability += 1.0 - s;  // close the simplex exactly
  return MixedUnitaryChannel(std::move(terms));
}

double power_iteration_norm(const ComplexMatrix& m, int iters) {
  const int n = m.dim();
  std::vector<cplx> v(n, cplx(1.0, 0.25));  // fixed start, generic direction
  const ComplexMatrix madj = m.adjoint();
  auto apply = [&](const ComplexMatrix& a, const std::vector<cplx>& x) {
    std::vector<cplx> y(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[i] += a(i, j) * x[j];
    return y;
  };
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    std::vector<cplx> w = apply(madj, apply(m, v));
    double nw = 0.0;
    for (const cplx& z : w) nw += std::norm(z);
    nw = std::sqrt(nw);
    if (nw == 0.0) return 0.0;
    lambda = nw;  // Rayleigh quotient of M'M at the previous unit vector
    for (cplx& z : w) z /= nw;
    v = std::move(w);
  }
  return std::sqrt(lambda);
}

std::vector<double> jacobi_svd_singular_values(const ComplexMatrix& m) {
  const int n = m.dim();
  // Columns of a working copy are orthogonalized in place.
  std::vector<std::vector<cplx>> col(n, std::vector<cplx>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) col[j][i] = m(i, j);

  auto dot = [n](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += std::conj(a[i]) * b[i];
    return s;
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double app = dot(col[p], col[p]).real();
        const double aqq = dot(col[q], col[q]).real();
        const cplx apq = dot(col[p], col[q]);
        const double g = std::abs(apq);
        off = std::max(off, g / std::max(std::sqrt(app * aqq), 1e-300));
        if (g <= 1e-300) continue;
        const cplx phase = apq / g;
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx w = std::conj(phase);
        for (int i = 0; i < n; ++i) {
          const cplx vp = col[p][i], vq = col[q][i];
          col[p][i] = c * vp - s * w * vq;
          col[q][i] = s * vp + c * w * vq;
        }
      }
    }
    if (off <= 1e-15) break;
  }

  std::vector<double> sv(n);
  for (int j = 0; j < n; ++j) sv[j] = std::sqrt(dot(col[j], col[j]).real());
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

bool BruteSet::contains(const ComplexMatrix& m) const {
  const UnitaryMatrix mu(m, 1e-9);
  for (const ComplexMatrix& e : elements)
    if (mixsynth::phase_minimized_distance(UnitaryMatrix(e, 1e-9), mu) <= 1e-9) return true;
  return false;
}

void BruteSet::insert(const ComplexMatrix& m) {
  if (!contains(m)) elements.push_back(m);
}

BruteSet brute_clifford_closure() {
  const mixsynth::GateSet& gs = mixsynth::clifford_t_gateset();
  BruteSet set;
  set.insert(ComplexMatrix::identity(2));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<ComplexMatrix> snapshot = set.elements;
    for (const ComplexMatrix& e : snapshot)
      for (const char* g : {"H", "S"}) {
        const ComplexMatrix candidate = e * gs.gate(g).matrix;
        if (!set.contains(candidate)) {
          set.insert(candidate);
          grew = true;
        }
      }
  }
  return set;
}

BruteSet brute_interleavings(int tmax) {
  const BruteSet cliffords = brute_clifford_closure();
  const ComplexMatrix t = mixsynth::clifford_t_gateset().gate("T").matrix;
  BruteSet out;
  std::vector<ComplexMatrix> level = cliffords.elements;
  for (const ComplexMatrix& c : level) out.insert(c);
  for (int k = 1; k <= tmax; ++k) {
    std::vector<ComplexMatrix> next;
    BruteSet next_dedup;
    for (const ComplexMatrix& prefix : level)
      for (const ComplexMatrix& c : cliffords.elements) {
        const ComplexMatrix w = prefix * t * c;
        if (!next_dedup.contains(w)) {
          next_dedup.insert(w);
          next.push_back(w);
          out.insert(w);
        }
      }
    level = std::move(next);
  }
  return out;
}

}  // namespace testsupport
