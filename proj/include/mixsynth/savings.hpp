#pragma once

// Worst-case synthesis cost models f(eps) = A log2(1/eps)^gamma and the
// dilution calculus: running at precision sqrt(eps/alpha) buys eps-level
// channel noise at a cost factor C_{alpha,eps}^gamma.

#include <string>
#include <vector>

#include "mixsynth/error.hpp"

namespace mixsynth {

struct CostModel {
  std::string name;
  double leading_coefficient;  // A > 0
  double exponent;             // gamma > 0
  // Subleading terms (e.g. the O(log2 log2(1/eps)) term of the single-qubit
  // Clifford+T bound) are documented but excluded; they cancel in the ratio
  // limits this module exists to compute.

  double eval(double eps) const;
};

CostModel cost_model_rs();             // A = 9, gamma = 1
CostModel cost_model_axial_worst();    // A = 4, gamma = 1
CostModel cost_model_axial_average();  // A = 3, gamma = 1

struct SavingsPoint {
  double eps;
  double alpha;
  double c_value;
  double baseline_cost;
  double diluted_cost;
  double ratio;
};

// C_{alpha,eps} = (1/2)(1 + log(alpha)/log(1/eps)). Base-independent.
double c_factor(double alpha, double eps);

// f evaluated at sqrt(eps/alpha).
double diluted_cost(const CostModel& model, double alpha, double eps);

// Tabulated savings curve for a grid of eps values (any order preserved).
std::vector<SavingsPoint> fig1_curve(const CostModel& model, double alpha,
                                     const std::vector<double>& eps_grid);

// CSV with header eps,alpha,C,baseline_cost,diluted_cost,ratio.
std::string savings_csv(const std::vector<SavingsPoint>& points);

}  // namespace mixsynth
