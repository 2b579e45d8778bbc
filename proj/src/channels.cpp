#include "mixsynth/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mixsynth/rng.hpp"

namespace mixsynth {

MixedUnitaryChannel::MixedUnitaryChannel(std::vector<ChannelTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) raise(ErrorCode::InvalidArgument, "channel needs at least one term");
  const int d = terms_.front().unitary.dim();
  double total = 0.0;
  for (const ChannelTerm& t : terms_) {
    if (t.unitary.dim() != d) raise(ErrorCode::DimensionMismatch, "channel terms of mixed dimension");
    if (!(t.probability > 0.0) || t.probability > 1.0 + 1e-12)
      raise(ErrorCode::InvalidArgument, "term probabilities must lie in (0, 1]");
    total += t.probability;
  }
  if (std::abs(total - 1.0) > 1e-12)
    raise(ErrorCode::InvalidArgument, "term probabilities must sum to 1");
}

MixedUnitaryChannel MixedUnitaryChannel::single(const UnitaryMatrix& u) {
  return MixedUnitaryChannel({ChannelTerm{1.0, u}});
}

ChoiMatrix ChoiMatrix::validated(ComplexMatrix m, std::string source, bool is_difference) {
  if (operator_norm(m - m.adjoint()) > 1e-10)
    raise(ErrorCode::InvalidArgument, "Choi matrix must be Hermitian");
  if (is_difference && std::abs(m.trace()) > 1e-10)
    raise(ErrorCode::InvalidArgument, "Choi matrix of a channel difference must be traceless");
  return ChoiMatrix{std::move(m), std::move(source), is_difference};
}

DiamondCertificate DiamondCertificate::validated(DiamondCertificate c) {
  if (c.lower < 0.0 || c.upper < 0.0)
    raise(ErrorCode::InvalidArgument, "certificate bounds must be nonnegative");
  if (c.lower > c.upper + 1e-7)
    raise(ErrorCode::InvalidArgument, "certificate lower bound exceeds upper bound");
  return c;
}

std::vector<cplx> vec_row_major(const ComplexMatrix& m) {
  return m.data();
}

namespace {

ComplexMatrix outer(const std::vector<cplx>& v) {
  const int n = static_cast<int>(v.size());
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

// Partial trace over the output (first) factor of an n x n matrix with
// n = d_out * d_in; here d_out = d_in = D.
ComplexMatrix ptrace_out(const ComplexMatrix& m, int d) {
  ComplexMatrix r(d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      cplx s = 0.0;
      for (int a = 0; a < d; ++a) s += m(a * d + k, a * d + l);
      r(k, l) = s;
    }
  return r;
}

// 1_out (x) W.
ComplexMatrix embed_input(const ComplexMatrix& w, int d) {
  const int n = d * w.dim();
  ComplexMatrix r(n);
  for (int a = 0; a < d; ++a)
    for (int k = 0; k < w.dim(); ++k)
      for (int l = 0; l < w.dim(); ++l) r(a * w.dim() + k, a * w.dim() + l) = w(k, l);
  return r;
}

ComplexMatrix psd_project(const ComplexMatrix& m) {
  const HermitianEig e = eig_hermitian(m);
  const int n = m.dim();
  ComplexMatrix r(n);
  for (int k = 0; k < n; ++k) {
    if (e.values[k] <= 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const cplx vik = e.vectors(i, k) * e.values[k];
      for (int j = 0; j < n; ++j) r(i, j) += vik * std::conj(e.vectors(j, k));
    }
  }
  return r;
}

ComplexMatrix abs_hermitian(const ComplexMatrix& m) {
  const HermitianEig e = eig_hermitian(m);
  const int n = m.dim();
  ComplexMatrix r(n);
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(e.values[k]);
    if (a == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const cplx vik = e.vectors(i, k) * a;
      for (int j = 0; j < n; ++j) r(i, j) += vik * std::conj(e.vectors(j, k));
    }
  }
  return r;
}

double min_eig(const ComplexMatrix& m) { return eig_hermitian(m).values.front(); }
double max_eig(const ComplexMatrix& m) { return eig_hermitian(m).values.back(); }

// Objective value of the dual point Y after hard-shifting it into
// feasibility (Y >= J and Y >= -J). Any output is a true upper bound on
// ||Phi||_diamond for the Choi matrix J.
double certified_value(const ComplexMatrix& y, const ComplexMatrix& j, int d) {
  const double viol = std::max({0.0, -min_eig(y - j), -min_eig(y + j)});
  return max_eig(ptrace_out(y, d)) + d * viol + 1e-12;
}

struct AdmmResult {
  double value = 0.0;  // certified bound on ||Phi||_diamond at unit scale
  long iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// min lambda_max(Tr_out Y) s.t. Y >= J, Y >= -J for Hermitian J, solved by
// ADMM: the x-step is the closed-form projection onto the affine constraint
// manifold, the z-step projects onto the PSD cones.
AdmmResult solve_dual_sdp(const ComplexMatrix& j, int d, double target_residual, long max_iter) {
  const int n = j.dim();
  AdmmResult res;

  ComplexMatrix y = abs_hermitian(j);
  double t = max_eig(ptrace_out(y, d));
  res.value = certified_value(y, j, d);

  ComplexMatrix z0 = psd_project(y - j);
  ComplexMatrix z1 = psd_project(y + j);
  ComplexMatrix z2 = psd_project(t * ComplexMatrix::identity(d) - ptrace_out(y, d));
  ComplexMatrix u0(n), u1(n), u2(d);

  double rho = 1.0;
  double residual = 1.0;
  long it = 0;
  for (; it < max_iter; ++it) {
    // x-step.
    const ComplexMatrix g0 = j + z0 - u0;
    const ComplexMatrix g1 = -j + z1 - u1;
    const ComplexMatrix m = 0.5 * (g0 + g1);
    const ComplexMatrix k = z2 - u2;
    const ComplexMatrix t0 = ptrace_out(m, d);
    const double sigma = (t0.trace() + k.trace()).real();
    t = sigma / d - (d + 2.0) / (2.0 * d * rho);
    ComplexMatrix w = t * ComplexMatrix::identity(d) - t0 - k;
    w *= 1.0 / (d + 2.0);
    y = m + embed_input(w, d);

    // z-step.
    const ComplexMatrix a0 = y - j;
    const ComplexMatrix a1 = y + j;
    const ComplexMatrix a2 = t * ComplexMatrix::identity(d) - ptrace_out(y, d);
    const ComplexMatrix z0n = psd_project(a0 + u0);
    const ComplexMatrix z1n = psd_project(a1 + u1);
    const ComplexMatrix z2n = psd_project(a2 + u2);

    const double dual_res = rho * std::max({(z0n - z0).frobenius_norm(),
                                            (z1n - z1).frobenius_norm(),
                                            (z2n - z2).frobenius_norm()});
    z0 = z0n;
    z1 = z1n;
    z2 = z2n;

    // scaled dual update.
    u0 += a0 - z0;
    u1 += a1 - z1;
    u2 += a2 - z2;

    const double primal_res = std::max({(a0 - z0).frobenius_norm(),
                                        (a1 - z1).frobenius_norm(),
                                        (a2 - z2).frobenius_norm()});
    residual = std::max(primal_res, dual_res);

    if ((it & 0xff) == 0xff) {
      res.value = std::min(res.value, certified_value(y, j, d));
      // Residual balancing.
      if (primal_res > 10.0 * dual_res) {
        rho *= 2.0;
        u0 *= 0.5;
        u1 *= 0.5;
        u2 *= 0.5;
      } else if (dual_res > 10.0 * primal_res) {
        rho *= 0.5;
        u0 *= 2.0;
        u1 *= 2.0;
        u2 *= 2.0;
      }
    }
    if (residual <= target_residual) {
      res.converged = true;
      break;
    }
  }
  res.value = std::min(res.value, certified_value(y, j, d));
  res.iterations = it + 1;
  res.residual = residual;
  return res;
}

// (Lambda (x) 1)(|phi><phi|) for Lambda = E - V, with the state given as a
// D x D matrix Phi of unit Frobenius norm.
ComplexMatrix apply_doubled_difference(const MixedUnitaryChannel& e, const UnitaryMatrix& v,
                                       const ComplexMatrix& phi) {
  const int n = phi.dim() * phi.dim();
  ComplexMatrix m(n);
  for (const ChannelTerm& term : e.terms()) {
    m += term.probability * outer(vec_row_major(term.unitary.matrix() * phi));
  }
  m -= outer(vec_row_major(v.matrix() * phi));
  return m;
}

double state_value(const MixedUnitaryChannel& e, const UnitaryMatrix& v, const ComplexMatrix& phi) {
  return 0.5 * trace_norm(apply_doubled_difference(e, v, phi));
}

ComplexMatrix normalized_state(ComplexMatrix phi) {
  const double nrm = phi.frobenius_norm();
  if (nrm == 0.0) raise(ErrorCode::InvalidArgument, "zero state");
  phi *= 1.0 / nrm;
  return phi;
}

void check_dims(const MixedUnitaryChannel& e, const UnitaryMatrix& v) {
  if (e.dim() != v.dim()) raise(ErrorCode::DimensionMismatch, "channel and target dimensions differ");
}

}  // namespace

ChoiMatrix choi_of_difference(const MixedUnitaryChannel& e, const UnitaryMatrix& v) {
  check_dims(e, v);
  const int d = v.dim();
  ComplexMatrix j(d * d);
  for (const ChannelTerm& term : e.terms())
    j += term.probability * outer(vec_row_major(term.unitary.matrix()));
  j -= outer(vec_row_major(v.matrix()));
  return ChoiMatrix::validated(std::move(j), "difference(mixed-unitary, unitary)", true);
}

DiamondCertificate diamond_distance_upper(const MixedUnitaryChannel& e, const UnitaryMatrix& v,
                                          double tol) {
  check_dims(e, v);
  if (v.dim() > 3) raise(ErrorCode::InvalidArgument, "diamond SDP restricted to D <= 3");
  if (!(tol >= 1e-7)) raise(ErrorCode::InvalidArgument, "tol must be at least 1e-7");
  const int d = v.dim();

  const ChoiMatrix choi = choi_of_difference(e, v);
  const double scale = operator_norm(choi.matrix);

  DiamondCertificate cert;
  cert.tol = tol;
  cert.method = "dual-sdp/admm-splitting";
  // Maximally entangled state: a cheap, always-valid lower bound.
  cert.lower = state_value(e, v, normalized_state(ComplexMatrix::identity(d)));

  if (scale <= 1e-14) {
    cert.upper = 0.5 * max_eig(ptrace_out(abs_hermitian(choi.matrix), d));
    cert.residual = 0.0;
    return DiamondCertificate::validated(cert);
  }

  const ComplexMatrix jn = (1.0 / scale) * choi.matrix;
  const long max_iter = 200000;
  const AdmmResult sol = solve_dual_sdp(jn, d, 0.05 * tol, max_iter);
  cert.upper = 0.5 * scale * sol.value;
  cert.iterations = sol.iterations;
  cert.residual = sol.residual;
  cert.stalled = !sol.converged && sol.residual > tol;
  if (cert.lower > cert.upper) cert.lower = cert.upper;  // both valid; sweep wins on ties
  return DiamondCertificate::validated(cert);
}

double diamond_distance_lower(const MixedUnitaryChannel& e, const UnitaryMatrix& v) {
  check_dims(e, v);
  if (v.dim() > 3) raise(ErrorCode::InvalidArgument, "diamond sweep restricted to D <= 3");
  const int d = v.dim();

  ComplexMatrix best_phi = normalized_state(ComplexMatrix::identity(d));
  double best = state_value(e, v, best_phi);

  Rng rng(derive_seed("diamond-lower-sweep", 0));
  for (int rep = 0; rep < 1000; ++rep) {
    ComplexMatrix phi(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) phi(i, j) = cplx(rng.normal(), rng.normal());
    phi = normalized_state(std::move(phi));
    const double val = state_value(e, v, phi);
    if (val > best) {
      best = val;
      best_phi = phi;
    }
  }
  // Local refinement around the best candidate.
  for (double sigma : {0.3, 0.1, 0.03, 0.01, 0.003, 0.001}) {
    for (int attempt = 0; attempt < 40; ++attempt) {
      ComplexMatrix phi = best_phi;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) phi(i, j) += sigma * cplx(rng.normal(), rng.normal());
      phi = normalized_state(std::move(phi));
      const double val = state_value(e, v, phi);
      if (val > best) {
        best = val;
        best_phi = phi;
      }
    }
  }
  return best;
}

namespace {

struct Point2 {
  double x, y;
};

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist_origin_segment(const Point2& a, const Point2& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(-(a.x * vx + a.y * vy) / len2, 0.0, 1.0);
  const double px = a.x + t * vx, py = a.y + t * vy;
  return std::hypot(px, py);
}

// Distance from the origin to the convex hull of a point set in the plane.
double dist_origin_hull(std::vector<Point2> pts) {
  // Dedup.
  std::vector<Point2> uniq;
  for (const Point2& p : pts) {
    bool seen = false;
    for (const Point2& q : uniq)
      if (std::hypot(p.x - q.x, p.y - q.y) <= 1e-12) {
        seen = true;
        break;
      }
    if (!seen) uniq.push_back(p);
  }
  if (uniq.size() == 1) return std::hypot(uniq[0].x, uniq[0].y);
  if (uniq.size() == 2) return dist_origin_segment(uniq[0], uniq[1]);

  // Andrew monotone chain.
  std::sort(uniq.begin(), uniq.end(),
            [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point2> hull(2 * uniq.size());
  std::size_t k = 0;
  for (const Point2& p : uniq) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower_end = k + 1;
  for (std::size_t i = uniq.size() - 1; i-- > 0;) {
    const Point2& p = uniq[i];
    while (k >= lower_end && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);  // counter-clockwise, last point == first removed

  if (hull.size() < 3) return dist_origin_segment(hull[0], hull.back());

  const Point2 origin{0.0, 0.0};
  bool inside = true;
  double edge_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, origin) < 0.0) inside = false;
    edge_dist = std::min(edge_dist, dist_origin_segment(a, b));
  }
  return inside ? 0.0 : edge_dist;
}

}  // namespace

double unitary_pair_diamond(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  if (u.dim() != v.dim()) raise(ErrorCode::DimensionMismatch, "unitary dimensions differ");
  // Tolerance relaxed slightly: the product of two validated unitaries
  // carries both construction errors.
  const UnitaryMatrix w(v.matrix().adjoint() * u.matrix(), 1e-11);
  const UnitaryEig e = eig_unitary(w);
  std::vector<Point2> pts;
  pts.reserve(e.values.size());
  for (const cplx& z : e.values) pts.push_back(Point2{z.real(), z.imag()});
  const double d = dist_origin_hull(std::move(pts));
  return std::sqrt(std::max(0.0, 1.0 - d * d));
}

}  // namespace mixsynth
