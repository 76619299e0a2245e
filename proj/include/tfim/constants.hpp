#pragma once

#include <functional>
#include <vector>

namespace tfim {

/// Hyperplane-rounding sign correlation (2/pi) arcsin t. Throws ArgumentError for |t| > 1.
double k_of_t(double t);

/// (1 + K(t)) / (1 + t)
double ratio_a(double t);
/// (1 + t^2 K(t)) / (1 + t)
double ratio_b(double t);
/// (1 + ((1 - q^2) + q^2 t^2) K(t)) / (1 + t)
double ratio_q(double q, double t);

struct Minimum {
  double value = 0.0;
  double argmin = 0.0;
};

/// Grid scan over [lo, hi] followed by golden-section refinement of the best bracket
/// down to `width`. Endpoints are always candidates.
Minimum minimize_scalar(const std::function<double(double)>& f, double lo = 0.0, double hi = 1.0,
                        int grid = 2001, double width = 1e-10);

/// min over t in [0,1] of ratio_a.
Minimum alpha_gw();
/// min over t in [0,1] of ratio_q(q, .). beta_of_q(0) = alpha_gw, beta_of_q(1) = beta.
Minimum beta_of_q(double q);
/// min over t in [0,1] of ratio_b.
Minimum beta();

/// Root of beta(q) = (1 + q)/2 on [0,1], bisection to 1e-8.
double q_star();

/// 1 - 1/(4 alpha) for the field/Ising pair; the default uses alpha_gw().
double warmup_ratio();
double warmup_ratio(double alpha);

/// Crossing share p* = (1/2)/(alpha + 1/2 - beta) of the A/B guarantee lines.
double two_candidate_crossing(double alpha, double beta_value);
/// 1/2 + (1/2)(alpha - 1/2)/(alpha + 1/2 - beta); the default uses computed constants.
double two_candidate_gamma();
double two_candidate_gamma(double alpha, double beta_value);

/// Q(p, q) = (1+q)/2 + [beta(q) - (1+q)/2] p, with beta(q) supplied.
double interpolation_ratio(double p, double q, double beta_q);

struct CurvePoint {
  double p = 0.0;
  double q_opt = 0.0;
  double ratio = 0.0;
};

/// argmax over q in [0,1] of Q(p, q) and the maximum.
CurvePoint optimal_q(double p);

/// Uniform p-grid on [0,1] with `grid` points (grid >= 2).
std::vector<CurvePoint> q_opt_curve(int grid = 1001);

struct CurveFeatures {
  double transition_p = 0.0;  // first p where q_opt leaves 1
  double crossing_p = 0.0;    // q_opt(p) = q_star, linearly interpolated
  double min_ratio = 0.0;
  double max_q_jump = 0.0;    // largest |q_opt| change between adjacent points
};

CurveFeatures analyze_curve(const std::vector<CurvePoint>& curve, double q_star_value);

}  // namespace tfim
