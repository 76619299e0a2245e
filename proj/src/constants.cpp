#include "tfim/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tfim/errors.hpp"

namespace tfim {

double k_of_t(double t) {
  if (!(std::abs(t) <= 1.0)) throw ArgumentError("K(t) requires |t| <= 1");
  return 2.0 / std::numbers::pi * std::asin(t);
}

double ratio_a(double t) { return (1.0 + k_of_t(t)) / (1.0 + t); }

double ratio_b(double t) { return (1.0 + t * t * k_of_t(t)) / (1.0 + t); }

double ratio_q(double q, double t) {
  const double leftover = (1.0 - q * q) + q * q * t * t;
  return (1.0 + leftover * k_of_t(t)) / (1.0 + t);
}

Minimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi, int grid,
                        double width) {
  grid = std::max(grid, 3);
  const double h = (hi - lo) / (grid - 1);
  int best = 0;
  double best_value = f(lo);
  for (int k = 1; k < grid; ++k) {
    const double v = f(k == grid - 1 ? hi : lo + k * h);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  Minimum out{best_value, best == grid - 1 ? hi : lo + best * h};

  double a = lo + std::max(best - 1, 0) * h;
  double b = best + 1 >= grid - 1 ? hi : lo + (best + 1) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = f(mid);
  if (fm < out.value) out = {fm, mid};
  return out;
}

Minimum alpha_gw() { return minimize_scalar(ratio_a); }

Minimum beta_of_q(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ArgumentError("q must lie in [0,1]");
  return minimize_scalar([q](double t) { return ratio_q(q, t); });
}

Minimum beta() { return minimize_scalar(ratio_b); }

double q_star() {
  auto gap = [](double q) { return beta_of_q(q).value - 0.5 * (1.0 + q); };
  double lo = 0.0;
  double hi = 1.0;
  double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (!(g_lo > 0.0 && g_hi < 0.0)) {
    throw VerificationError("beta(q) - (1+q)/2 does not change sign on [0,1]");
  }
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if ((g > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double warmup_ratio(double alpha) { return 1.0 - 1.0 / (4.0 * alpha); }

double warmup_ratio() { return warmup_ratio(alpha_gw().value); }

double two_candidate_crossing(double alpha, double beta_value) {
  return 0.5 / (alpha + 0.5 - beta_value);
}

double two_candidate_gamma(double alpha, double beta_value) {
  return 0.5 + 0.5 * (alpha - 0.5) / (alpha + 0.5 - beta_value);
}

double two_candidate_gamma() { return two_candidate_gamma(alpha_gw().value, beta().value); }

double interpolation_ratio(double p, double q, double beta_q) {
  const double field_factor = 0.5 * (1.0 + q);
  return field_factor + (beta_q - field_factor) * p;
}

namespace {

// beta(q) on a uniform q-grid, computed once for the curve scan.
const std::vector<double>& beta_grid() {
  static const std::vector<double> table = [] {
    std::vector<double> out(2001);
    for (int k = 0; k < 2001; ++k) out[k] = beta_of_q(k == 2000 ? 1.0 : k / 2000.0).value;
    return out;
  }();
  return table;
}

}  // namespace

CurvePoint optimal_q(double p) {
  const auto& table = beta_grid();
  const int grid = static_cast<int>(table.size());
  int best = 0;
  double best_value = -1.0;
  for (int k = 0; k < grid; ++k) {
    const double q = k == grid - 1 ? 1.0 : static_cast<double>(k) / (grid - 1);
    const double v = interpolation_ratio(p, q, table[k]);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double h = 1.0 / (grid - 1);
  const double lo = std::max(best - 1, 0) * h;
  const double hi = std::min((best + 1) * h, 1.0);
  const Minimum m = minimize_scalar(
      [p](double q) { return -interpolation_ratio(p, q, beta_of_q(q).value); }, lo, hi, 3, 1e-9);
  CurvePoint point{p, m.argmin, -m.value};
  const double grid_q = best == grid - 1 ? 1.0 : best * h;
  if (best_value > point.ratio) point = {p, grid_q, best_value};
  return point;
}

std::vector<CurvePoint> q_opt_curve(int grid) {
  if (grid < 2) throw ArgumentError("curve needs at least 2 points");
  std::vector<CurvePoint> curve;
  curve.reserve(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    const double p = k == grid - 1 ? 1.0 : static_cast<double>(k) / (grid - 1);
    curve.push_back(optimal_q(p));
  }
  return curve;
}

CurveFeatures analyze_curve(const std::vector<CurvePoint>& curve, double q_star_value) {
  CurveFeatures out;
  if (curve.empty()) return out;
  out.transition_p = curve.back().p;
  for (const CurvePoint& pt : curve) {
    if (pt.q_opt < 1.0 - 1e-6) {
      out.transition_p = pt.p;
      break;
    }
  }
  out.min_ratio = curve.front().ratio;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    out.min_ratio = std::min(out.min_ratio, curve[k].ratio);
    if (k == 0) continue;
    const CurvePoint& a = curve[k - 1];
    const CurvePoint& b = curve[k];
    out.max_q_jump = std::max(out.max_q_jump, std::abs(b.q_opt - a.q_opt));
    const double fa = a.q_opt - q_star_value;
    const double fb = b.q_opt - q_star_value;
    if (out.crossing_p == 0.0 && fa >= 0.0 && fb < 0.0) {
      out.crossing_p = a.p + (b.p - a.p) * fa / (fa - fb);
    }
  }
  return out;
}

}  // namespace tfim
