#include "mixsynth/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mixsynth {

void HullConfig::validate() const {
  if (!(eps > 0.0)) raise(ErrorCode::InvalidArgument, "eps must be positive");
  if (!(r > 1.0)) raise(ErrorCode::InvalidArgument, "extrapolation factor r must exceed 1");
  if (std::isnan(mu_tol)) raise(ErrorCode::InvalidArgument, "mu_tol must not be NaN");
  if (max_iter < 1) raise(ErrorCode::InvalidArgument, "max_iter must be at least 1");
}

MixingEnsemble assemble_ensemble(UnitaryMatrix target, std::vector<EnsembleMember> members,
                                 double residual, std::string construction, double eps,
                                 std::uint64_t seed) {
  if (members.empty()) raise(ErrorCode::InvalidArgument, "ensemble needs at least one member");
  double total = 0.0;
  for (const EnsembleMember& m : members) {
    if (m.costed.unitary.dim() != target.dim())
      raise(ErrorCode::DimensionMismatch, "ensemble member dimension differs from target");
    if (!(m.p > 0.0) || m.p > 1.0 + 1e-12)
      raise(ErrorCode::InvalidArgument, "member probabilities must lie in (0, 1]");
    total += m.p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    raise(ErrorCode::InvalidArgument, "member probabilities must sum to 1");

  MixingEnsemble e{std::move(target), std::move(members), 0.0, 0.0, residual,
                   std::move(construction), eps, seed};
  ComplexMatrix avg(e.target.dim());
  for (const EnsembleMember& m : e.members) {
    e.a = std::max(e.a, operator_norm(m.costed.unitary.matrix() - e.target.matrix()));
    avg += m.p * m.costed.unitary.matrix();
  }
  e.b = operator_norm(avg - e.target.matrix());
  return e;
}

namespace {

// Isometric embedding of Hermitian matrices into R^{n^2}: diagonal entries,
// then sqrt(2) * (Re, Im) of the strict upper triangle.
std::vector<double> embed(const HermitianMatrix& h) {
  const int n = h.dim();
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) v.push_back(h.matrix()(i, i).real());
  const double s2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v.push_back(s2 * h.matrix()(i, j).real());
      v.push_back(s2 * h.matrix()(i, j).imag());
    }
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solve the (k+1)x(k+1) KKT system [G 1; 1' 0][v; lam] = [0; 1] by Gaussian
// elimination with partial pivoting. Returns false on a vanishing pivot.
bool affine_minimizer(const std::vector<std::vector<double>>& gram, std::vector<double>& v) {
  const std::size_t k = gram.size();
  const std::size_t m = k + 1;
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = gram[i][j];
    a[i][k] = 1.0;
    a[k][i] = 1.0;
  }
  a[k][m] = 1.0;

  double scale = 1e-300;
  for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(gram[i][i]));
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14 * scale) return false;
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  v.resize(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = a[i][m] / a[i][i];
  return true;
}

HermitianMatrix combine(const std::vector<HermitianMatrix>& hs, const std::vector<double>& w) {
  ComplexMatrix m(hs.front().dim());
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (w[i] != 0.0) m += w[i] * hs[i].matrix();
  return HermitianMatrix(std::move(m));
}

MinNormPoint finish(const std::vector<HermitianMatrix>& hs, const std::vector<double>& w) {
  MinNormPoint out{combine(hs, w), w, 0.0, 0.0};
  out.frobenius_norm = out.point.matrix().frobenius_norm();
  out.op_norm = operator_norm(out.point.matrix());
  return out;
}

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  int rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = static_cast<int>(i + 1);
      theta = t;
    }
  }
  (void)rho;
  for (double& x : v) x = std::max(0.0, x - theta);
  double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
  return v;
}

}  // namespace

MinNormPoint min_norm_point(const std::vector<HermitianMatrix>& hs) {
  if (hs.empty()) raise(ErrorCode::InvalidArgument, "min_norm_point needs at least one operator");
  const int dim = hs.front().dim();
  for (const HermitianMatrix& h : hs)
    if (h.dim() != dim) raise(ErrorCode::DimensionMismatch, "operators of mixed dimension");

  const std::size_t m = hs.size();
  std::vector<std::vector<double>> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = embed(hs[i]);

  double scale2 = 1e-300;
  for (const auto& v : p) scale2 = std::max(scale2, dot(v, v));
  const double kkt_tol = 1e-12 * scale2;

  // Start from the shortest point.
  std::size_t start = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (dot(p[i], p[i]) < dot(p[start], p[start])) start = i;

  std::vector<std::size_t> corral = {start};
  std::vector<double> wc = {1.0};
  std::vector<double> x = p[start];

  const int max_major = static_cast<int>(16 * m + 128);
  for (int major = 0; major < max_major; ++major) {
    // Optimality: every point must satisfy <x, p_j> >= ||x||^2 (up to tol).
    std::size_t best = 0;
    double best_ip = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      const double ip = dot(x, p[j]);
      if (ip < best_ip) {
        best_ip = ip;
        best = j;
      }
    }
    const double xx = dot(x, x);
    if (best_ip >= xx - kkt_tol) {
      std::vector<double> w_full(m, 0.0);
      for (std::size_t i = 0; i < corral.size(); ++i) w_full[corral[i]] = wc[i];
      return finish(hs, w_full);
    }
    if (std::find(corral.begin(), corral.end(), best) != corral.end())
      raise(ErrorCode::NumericalStall, "minimum-norm-point iteration repeated a corral point");
    corral.push_back(best);
    wc.push_back(0.0);

    // Minor cycle: pull the affine minimizer back into the simplex.
    for (;;) {
      std::vector<std::vector<double>> gram(corral.size(), std::vector<double>(corral.size()));
      for (std::size_t i = 0; i < corral.size(); ++i)
        for (std::size_t j = 0; j < corral.size(); ++j) gram[i][j] = dot(p[corral[i]], p[corral[j]]);
      std::vector<double> v;
      if (!affine_minimizer(gram, v)) {
        // Affinely dependent corral: drop the oldest zero-weight member.
        bool dropped = false;
        for (std::size_t i = 0; i < corral.size(); ++i)
          if (wc[i] <= 1e-15) {
            corral.erase(corral.begin() + static_cast<long>(i));
            wc.erase(wc.begin() + static_cast<long>(i));
            dropped = true;
            break;
          }
        if (!dropped) raise(ErrorCode::NumericalStall, "degenerate corral in minimum-norm-point");
        continue;
      }
      const double vmin = *std::min_element(v.begin(), v.end());
      if (vmin >= -1e-14) {
        for (double& t : v) t = std::max(t, 0.0);
        double s = std::accumulate(v.begin(), v.end(), 0.0);
        for (double& t : v) t /= s;
        wc = v;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < wc[i]) theta = std::min(theta, wc[i] / (wc[i] - v[i]));
      for (std::size_t i = 0; i < wc.size(); ++i) wc[i] = wc[i] + theta * (v[i] - wc[i]);
      // Remove at least one vanished coordinate.
      for (std::size_t i = corral.size(); i-- > 0;) {
        if (wc[i] <= 1e-15) {
          corral.erase(corral.begin() + static_cast<long>(i));
          wc.erase(wc.begin() + static_cast<long>(i));
        }
      }
      if (corral.empty()) raise(ErrorCode::NumericalStall, "empty corral in minimum-norm-point");
    }

    x.assign(p.front().size(), 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i)
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += wc[i] * p[corral[i]][c];
  }
  raise(ErrorCode::NumericalStall, "minimum-norm-point major cycle cap exceeded");
}

MinNormPoint min_norm_point_polished(const std::vector<HermitianMatrix>& hs) {
  MinNormPoint best = min_norm_point(hs);
  if (hs.size() < 2 || best.op_norm == 0.0) return best;

  std::vector<double> w = best.weights;
  for (int it = 0; it < 200; ++it) {
    const HermitianMatrix mu = combine(hs, w);
    const HermitianEig e = eig_hermitian(mu.matrix());
    const int n = mu.dim();
    const bool top = std::abs(e.values.back()) >= std::abs(e.values.front());
    const int k = top ? n - 1 : 0;
    const double sign = top ? 1.0 : -1.0;
    // Subgradient of ||sum w_j H_j||_op: sign * v' H_j v at the extreme pair.
    std::vector<double> g(hs.size());
    for (std::size_t j = 0; j < hs.size(); ++j) {
      cplx s = 0.0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          s += std::conj(e.vectors(r, k)) * hs[j].matrix()(r, c) * e.vectors(c, k);
      g[j] = sign * s.real();
    }
    double gn2 = dot(g, g);
    if (gn2 <= 1e-300) break;
    const double step = best.op_norm / std::sqrt(gn2) / std::sqrt(static_cast<double>(it + 1));
    std::vector<double> next(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) next[j] = w[j] - step * g[j];
    w = project_simplex(std::move(next));
    const double val = operator_norm(combine(hs, w).matrix());
    if (val < best.op_norm) {
      best.weights = w;
      best.point = combine(hs, w);
      best.op_norm = val;
      best.frobenius_norm = best.point.matrix().frobenius_norm();
    }
  }
  return best;
}

HullResult run_hull(const UnitaryMatrix& v, SynthesisOracle& oracle, const HullConfig& cfg) {
  cfg.validate();
  const double eps = cfg.eps;
  const double mu_tol = cfg.resolved_mu_tol();

  HullTrace trace;
  std::vector<CostedUnitary> answers;
  std::vector<HermitianMatrix> hs;

  CostedUnitary first = oracle.synth(v, eps);
  HermitianMatrix h1 = principal_log_relative(v, first.unitary);
  {
    HullIterationRecord rec;
    rec.n = 1;
    rec.h = h1;
    rec.h_op_norm = operator_norm(h1.matrix());
    trace.records.push_back(std::move(rec));
  }
  answers.push_back(std::move(first));
  hs.push_back(std::move(h1));

  for (int n = 2; n <= cfg.max_iter; ++n) {
    const MinNormPoint mnp =
        cfg.polish_operator_norm ? min_norm_point_polished(hs) : min_norm_point(hs);

    HullIterationRecord rec;
    rec.n = n;
    rec.mu = mnp.point;
    rec.mu_op_norm = mnp.op_norm;

    if (mnp.op_norm <= mu_tol) {
      trace.records.push_back(std::move(rec));
      trace.final_weights = mnp.weights;
      trace.final_mu_op_norm = mnp.op_norm;
      trace.terminated = true;

      std::vector<EnsembleMember> members;
      for (std::size_t j = 0; j < answers.size(); ++j)
        if (mnp.weights[j] > 0.0) members.push_back({mnp.weights[j], answers[j]});
      MixingEnsemble ensemble = assemble_ensemble(v, std::move(members), mnp.op_norm, "hull",
                                                  eps, cfg.seed);
      if (cfg.in_theorem_regime()) {
        const double c = 3.0 * eps + 7.0 * eps * eps;
        if (ensemble.a > c + 0.5 * c * c || ensemble.b > 0.5 * c * c + 2.0 * mu_tol)
          raise(ErrorCode::InvalidState, "hull ensemble violates its diagnostic bounds");
      }
      return HullResult{std::move(ensemble), std::move(trace)};
    }

    const HermitianMatrix tau(-(cfg.r * eps / mnp.op_norm) * mnp.point.matrix());
    const UnitaryMatrix w(v.matrix() * expi(tau).matrix(), 1e-11);
    CostedUnitary answer = oracle.synth(w, eps);
    HermitianMatrix h = principal_log_relative(v, answer.unitary);

    rec.tau = tau;
    rec.w = w;
    rec.u = answer.unitary;
    rec.h = h;
    rec.h_op_norm = operator_norm(h.matrix());
    rec.delta_op_norm = operator_norm(h.matrix() - tau.matrix());
    trace.records.push_back(std::move(rec));

    answers.push_back(std::move(answer));
    hs.push_back(std::move(h));
  }
  throw HullIterationError(std::move(trace));
}

double theorem1_bound(double eps) {
  if (!(eps > 0.0) || !(eps < 0.01))
    raise(ErrorCode::OutOfRegime, "theorem regime requires 0 < eps < 0.01");
  const double c = 3.0 * eps + 7.0 * eps * eps;
  const double a = c + 0.5 * c * c;
  const double value = 0.5 * (a * a + c * c);
  if (value > 10.0 * eps * eps)
    raise(ErrorCode::InvalidState, "certified bound exceeded 10 eps^2 inside the regime");
  return value;
}

}  // namespace mixsynth
