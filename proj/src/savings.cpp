#include "mixsynth/savings.hpp"

#include <cmath>
#include <cstdio>

namespace mixsynth {

namespace {

void check_model(const CostModel& m) {
  if (!(m.leading_coefficient > 0.0) || !(m.exponent > 0.0))
    raise(ErrorCode::InvalidArgument, "cost model requires A > 0 and gamma > 0");
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double CostModel::eval(double eps) const {
  check_model(*this);
  if (!(eps > 0.0) || !(eps < 1.0))
    raise(ErrorCode::InvalidArgument, "cost model defined for 0 < eps < 1");
  return leading_coefficient * std::pow(std::log2(1.0 / eps), exponent);
}

CostModel cost_model_rs() { return {"rs", 9.0, 1.0}; }
CostModel cost_model_axial_worst() { return {"axial-worst", 4.0, 1.0}; }
CostModel cost_model_axial_average() { return {"axial-average", 3.0, 1.0}; }

double c_factor(double alpha, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) raise(ErrorCode::InvalidArgument, "eps must be in (0, 1)");
  if (!(alpha > 1.0)) raise(ErrorCode::InvalidArgument, "alpha must exceed 1");
  // Written as 1/2 + half-ratio so that c_factor - 1/2 recovers the
  // correction term to the last ulp.
  return 0.5 + 0.5 * (std::log(alpha) / std::log(1.0 / eps));
}

double diluted_cost(const CostModel& model, double alpha, double eps) {
  const double shifted = std::sqrt(eps / alpha);
  if (!(shifted < 1.0)) raise(ErrorCode::InvalidArgument, "sqrt(eps/alpha) must be below 1");
  return model.eval(shifted);
}

std::vector<SavingsPoint> fig1_curve(const CostModel& model, double alpha,
                                     const std::vector<double>& eps_grid) {
  std::vector<SavingsPoint> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    if (!(eps > 0.0) || !(eps < 1.0))
      raise(ErrorCode::InvalidArgument, "grid values must lie in (0, 1)");
    SavingsPoint p;
    p.eps = eps;
    p.alpha = alpha;
    p.c_value = c_factor(alpha, eps);
    p.baseline_cost = model.eval(eps);
    p.diluted_cost = diluted_cost(model, alpha, eps);
    p.ratio = p.diluted_cost / p.baseline_cost;
    out.push_back(p);
  }
  return out;
}

std::string savings_csv(const std::vector<SavingsPoint>& points) {
  std::string csv = "eps,alpha,C,baseline_cost,diluted_cost,ratio\n";
  for (const SavingsPoint& p : points) {
    csv += fmt17(p.eps) + "," + fmt17(p.alpha) + "," + fmt17(p.c_value) + "," +
           fmt17(p.baseline_cost) + "," + fmt17(p.diluted_cost) + "," + fmt17(p.ratio) + "\n";
  }
  return csv;
}

}  // namespace mixsynth
