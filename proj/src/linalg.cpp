#include "mixsynth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mixsynth {

namespace {

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    raise(ErrorCode::DimensionMismatch, "matrix dimensions differ");
}

bool all_finite(const std::vector<cplx>& v) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
  if (dim <= 0) raise(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  if (a_.size() != static_cast<std::size_t>(dim) * dim)
    raise(ErrorCode::InvalidArgument, "entry count does not match dimension");
  if (!all_finite(a_)) raise(ErrorCode::InvalidArgument, "matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  dim_ = static_cast<int>(rows.size());
  if (dim_ <= 0) raise(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  a_.reserve(static_cast<std::size_t>(dim_) * dim_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim_)
      raise(ErrorCode::InvalidArgument, "matrix must be square");
    for (const cplx& z : row) a_.push_back(z);
  }
  if (!all_finite(a_)) raise(ErrorCode::InvalidArgument, "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : a_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator-(const ComplexMatrix& a) {
  ComplexMatrix r = a;
  return r *= -1.0;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  const int n = a.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
  ComplexMatrix g = m_.adjoint() * m_;
  for (int i = 0; i < g.dim(); ++i) g(i, i) -= 1.0;
  const double err = operator_norm(g);
  if (err > tolerance)
    raise(ErrorCode::InvalidArgument, "matrix is not unitary (||M'M - 1|| = " + std::to_string(err) + ")");
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tolerance) : m_(m.dim()) {
  const ComplexMatrix adj = m.adjoint();
  const double err = operator_norm(m - adj);
  if (err > tolerance)
    raise(ErrorCode::InvalidArgument, "matrix is not Hermitian (||M - M'|| = " + std::to_string(err) + ")");
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) m_(i, j) = 0.5 * (m(i, j) + adj(i, j));
}

namespace {

// One complex Jacobi rotation in the (p, q) plane, parametrized so that
// G = [[c, s], [-s w, c w]] with w = e^{-i phi} and c^2 + s^2 = 1.
struct Rotation {
  double c, s;
  cplx w;
};

// Rotation diagonalizing the Hermitian 2x2 block [[app, apq], [conj(apq), aqq]].
Rotation make_rotation(double app, double aqq, cplx apq) {
  const double g = std::abs(apq);
  Rotation rot{1.0, 0.0, cplx(1.0, 0.0)};
  if (g == 0.0) return rot;
  const cplx phase = apq / g;  // e^{i phi}
  const double tau = (aqq - app) / (2.0 * g);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = 1.0 / (tau - std::sqrt(1.0 + tau * tau));
  rot.c = 1.0 / std::sqrt(1.0 + t * t);
  rot.s = t * rot.c;
  rot.w = std::conj(phase);
  return rot;
}

// M <- M G on columns p, q.
void apply_right(ComplexMatrix& m, int p, int q, const Rotation& r) {
  const int n = m.dim();
  for (int i = 0; i < n; ++i) {
    const cplx mp = m(i, p), mq = m(i, q);
    m(i, p) = r.c * mp - r.s * r.w * mq;
    m(i, q) = r.s * mp + r.c * r.w * mq;
  }
}

// M <- G' M on rows p, q.
void apply_left_adjoint(ComplexMatrix& m, int p, int q, const Rotation& r) {
  const int n = m.dim();
  const cplx wbar = std::conj(r.w);
  for (int j = 0; j < n; ++j) {
    const cplx mp = m(p, j), mq = m(q, j);
    m(p, j) = r.c * mp - r.s * wbar * mq;
    m(q, j) = r.s * mp + r.c * wbar * mq;
  }
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

void symmetrize(ComplexMatrix& m) {
  for (int i = 0; i < m.dim(); ++i) {
    m(i, i) = cplx(m(i, i).real(), 0.0);
    for (int j = i + 1; j < m.dim(); ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
}

constexpr int kMaxSweeps = 64;

// Cyclic Jacobi on a Hermitian matrix.
bool jacobi(ComplexMatrix& a, ComplexMatrix& q) {
  const int n = a.dim();
  q = ComplexMatrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-15 * scale) return true;
    for (int p = 0; p < n - 1; ++p) {
      for (int qq = p + 1; qq < n; ++qq) {
        const cplx apq = a(p, qq);
        if (std::abs(apq) == 0.0) continue;
        const Rotation rot = make_rotation(a(p, p).real(), a(qq, qq).real(), apq);
        apply_right(a, p, qq, rot);
        apply_left_adjoint(a, p, qq, rot);
        apply_right(q, p, qq, rot);
      }
    }
  }
  return off_diagonal_norm(a) <= 1e-12 * scale;
}

}  // namespace

HermitianEig eig_hermitian(const ComplexMatrix& m) {
  ComplexMatrix a = m;
  symmetrize(a);
  ComplexMatrix q;
  if (!jacobi(a, q))
    raise(ErrorCode::ConvergenceFailure, "Jacobi sweep cap exceeded");
  const int n = a.dim();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEig out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int r = 0; r < n; ++r) out.vectors(r, k) = q(r, order[k]);
  }
  return out;
}

namespace {

std::vector<double> singular_values_impl(const ComplexMatrix& m) {
  // Hermitian fast path: singular values are |eigenvalues|, which avoids
  // squaring the condition number through M'M.
  const double scale = std::max(m.frobenius_norm(), 1e-300);
  ComplexMatrix diff = m - m.adjoint();
  if (diff.frobenius_norm() <= 1e-13 * scale) {
    HermitianEig e = eig_hermitian(m);
    std::vector<double> s(e.values.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::abs(e.values[i]);
    std::sort(s.begin(), s.end(), std::greater<double>());
    return s;
  }
  HermitianEig e = eig_hermitian(m.adjoint() * m);
  std::vector<double> s(e.values.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(std::max(0.0, e.values[i]));
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

}  // namespace

std::vector<double> singular_values(const ComplexMatrix& m) { return singular_values_impl(m); }

double operator_norm(const ComplexMatrix& m) { return singular_values_impl(m).front(); }

double trace_norm(const ComplexMatrix& m) {
  const std::vector<double> s = singular_values_impl(m);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

namespace {

UnitaryEig finalize_unitary_eig(const ComplexMatrix& u, const ComplexMatrix& q,
                                const std::vector<cplx>& raw_values) {
  const int n = u.dim();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phase(n);
  for (int i = 0; i < n; ++i) phase[i] = std::atan2(raw_values[i].imag(), raw_values[i].real());
  std::sort(order.begin(), order.end(), [&phase](int i, int j) { return phase[i] < phase[j]; });

  UnitaryEig out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = raw_values[order[k]];
    for (int r = 0; r < n; ++r) out.vectors(r, k) = q(r, order[k]);
  }

  ComplexMatrix recon(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k)
        s += out.vectors(i, k) * out.values[k] * std::conj(out.vectors(j, k));
      recon(i, j) = s;
    }
  for (const cplx& lam : out.values)
    if (std::abs(std::abs(lam) - 1.0) > 1e-10)
      raise(ErrorCode::ConvergenceFailure, "unitary eigenvalue off the unit circle");
  if (operator_norm(recon - u) > tol::reconstruction)
    raise(ErrorCode::ConvergenceFailure, "unitary eigendecomposition residual too large");
  return out;
}

// Simultaneous diagonalization of the commuting Hermitian pair
// A = (U+U')/2, B = (U-U')/(2i): Jacobi-diagonalize cos(g)A + sin(g)B and
// accept once the resulting basis diagonalizes U itself. A combination can be
// degenerate where U is not (pairs with theta_i + theta_j = 2g), so a fixed
// list of mixing angles is tried; the residual check rejects the bad ones.
UnitaryEig eig_unitary_raw(const ComplexMatrix& u) {
  const int n = u.dim();

  // Diagonal fast path (axial rotations hit this constantly).
  if (off_diagonal_norm(u) <= 1e-13 * std::sqrt(static_cast<double>(n))) {
    std::vector<cplx> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = u(i, i);
    return finalize_unitary_eig(u, ComplexMatrix::identity(n), vals);
  }

  const ComplexMatrix uadj = u.adjoint();
  ComplexMatrix a(n), b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, j) = 0.5 * (u(i, j) + uadj(i, j));
      b(i, j) = cplx(0.0, -0.5) * (u(i, j) - uadj(i, j));
    }
  symmetrize(a);
  symmetrize(b);

  static constexpr double kMixAngles[] = {0.0,  0.78539816339744831, 1.5707963267948966,
                                          0.33, 2.3561944901923449,  1.03, 2.71, 0.61};
  for (double g : kMixAngles) {
    ComplexMatrix c(n);
    const double cg = std::cos(g), sg = std::sin(g);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(i, j) = cg * a(i, j) + sg * b(i, j);
    ComplexMatrix q;
    if (!jacobi(c, q)) continue;
    // Rotate U into the candidate basis and test for diagonality.
    const ComplexMatrix d = q.adjoint() * u * q;
    if (off_diagonal_norm(d) > 1e-11) continue;
    std::vector<cplx> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = d(i, i);
    return finalize_unitary_eig(u, q, vals);
  }
  raise(ErrorCode::ConvergenceFailure, "no mixing angle diagonalized the unitary");
}

}  // namespace

UnitaryEig eig_unitary(const UnitaryMatrix& u) { return eig_unitary_raw(u.matrix()); }

UnitaryMatrix expi(const HermitianMatrix& h) {
  const HermitianEig e = eig_hermitian(h.matrix());
  const int n = h.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k)
        s += e.vectors(i, k) * std::polar(1.0, e.values[k]) * std::conj(e.vectors(j, k));
      r(i, j) = s;
    }
  return UnitaryMatrix(std::move(r));
}

HermitianMatrix principal_log_relative(const UnitaryMatrix& v, const UnitaryMatrix& u) {
  check_same_dim(v.matrix(), u.matrix());
  const ComplexMatrix w = v.matrix().adjoint() * u.matrix();
  const UnitaryEig e = eig_unitary_raw(w);
  const int n = w.dim();
  std::vector<double> theta(n);
  for (int i = 0; i < n; ++i) {
    theta[i] = std::atan2(e.values[i].imag(), e.values[i].real());
    // atan2 lands in (-pi, pi]; the branch convention is [-pi, pi) and a
    // phase this close to the cut is reported, not silently resolved.
    if (M_PI - std::abs(theta[i]) <= tol::branch_cut)
      raise(ErrorCode::BranchAmbiguity, "eigenphase at the -pi branch cut");
  }
  ComplexMatrix hm(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k) s += e.vectors(i, k) * theta[k] * std::conj(e.vectors(j, k));
      hm(i, j) = s;
    }
  HermitianMatrix h(std::move(hm));
  if (operator_norm(v.matrix() * expi(h).matrix() - u.matrix()) > tol::reconstruction)
    raise(ErrorCode::ConvergenceFailure, "principal log reconstruction residual too large");
  return h;
}

namespace {

// Eigenphases of v'u sorted ascending, plus the length and center of the
// minimal covering arc on the circle.
struct PhaseArc {
  double length;
  double center;
};

PhaseArc covering_arc(const ComplexMatrix& vu) {
  const UnitaryEig e = eig_unitary_raw(vu);
  const int n = vu.dim();
  std::vector<double> th(n);
  for (int i = 0; i < n; ++i) th[i] = std::atan2(e.values[i].imag(), e.values[i].real());
  std::sort(th.begin(), th.end());
  double max_gap = 2.0 * M_PI - (th.back() - th.front());
  int gap_after = n - 1;
  for (int i = 0; i + 1 < n; ++i) {
    const double g = th[i + 1] - th[i];
    if (g > max_gap) {
      max_gap = g;
      gap_after = i;
    }
  }
  const double start = (gap_after == n - 1) ? th.front() : th[gap_after + 1];
  const double length = 2.0 * M_PI - max_gap;
  return PhaseArc{length, start + 0.5 * length};
}

}  // namespace

double phase_minimized_distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  check_same_dim(u.matrix(), v.matrix());
  const PhaseArc arc = covering_arc(v.matrix().adjoint() * u.matrix());
  return 2.0 * std::sin(0.25 * arc.length);
}

UnitaryMatrix phase_align(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  check_same_dim(u.matrix(), v.matrix());
  const PhaseArc arc = covering_arc(v.matrix().adjoint() * u.matrix());
  return UnitaryMatrix(std::polar(1.0, -arc.center) * u.matrix());
}

ComplexMatrix phase_canonicalize(const ComplexMatrix& m) {
  const double mx = m.max_abs();
  if (mx == 0.0) return m;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      const cplx z = m(i, j);
      if (std::abs(z) >= mx - 1e-6) return (std::conj(z) / std::abs(z)) * m;
    }
  return m;
}

ComplexMatrix pauli_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return ComplexMatrix{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
ComplexMatrix pauli_z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace mixsynth
