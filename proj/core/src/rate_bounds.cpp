#include "decaycert/rate_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace decaycert {
namespace {

void require_positive_delta(const ConstantSet& c) {
  if (!(c.delta > 0.0)) {
    throw Error(ErrorKind::NonPositiveDelta,
                "certificate refused: delta <= 0 (delta = " + std::to_string(c.delta) + ")");
  }
}

double relative_difference(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

double omega_theta(double theta, const ConstantSet& c) {
  require_positive_delta(c);
  if (!(theta > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "theta must be positive");
  }
  const double s = theta / c.alpha + 1.0 / (theta * c.delta);
  const double floor_s = 2.0 / std::sqrt(c.alpha * c.delta);
  const double nd = c.normD * c.normD / c.delta;
  // (s + nd)^2 - floor_s^2, arranged so the AM-GM gap s - floor_s is not
  // lost to cancellation near theta*.
  const double radicand = std::max(0.0, (s - floor_s) * (s + floor_s) + nd * (2.0 * s + nd));
  const double inv = 1.0 / c.beta + nd / 2.0 + s / 2.0 + std::sqrt(radicand) / 2.0;
  return 1.0 / inv;
}

double M_theta_b(double theta, double b, const ConstantSet& c) {
  require_positive_delta(c);
  if (!(theta > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "theta must be positive");
  }
  const double root_theta = std::sqrt(theta);
  constexpr double slack = 4.0 * std::numeric_limits<double>::epsilon();
  if (!(b >= 0.0) || b > root_theta * (1.0 + slack)) {
    throw Error(ErrorKind::InvalidIntercept,
                "intercept b = " + std::to_string(b) + " outside [0, sqrt(theta)]");
  }
  return c.nu + 2.0 / (c.delta * (b + std::sqrt(b * b + 4.0 * theta))) +
         std::max(0.0, root_theta - b) / c.beta;
}

double optimal_theta(const ConstantSet& c) {
  require_positive_delta(c);
  return std::sqrt(c.alpha / c.delta);
}

double omega_printed(const ConstantSet& c, int delta_power) {
  require_positive_delta(c);
  const double d2 = c.normD * c.normD;
  const double root_ad = std::sqrt(c.alpha * c.delta);
  const double inv = 1.0 / c.beta + 2.0 / root_ad + d2 / (2.0 * c.delta) +
                     std::sqrt(4.0 * d2 / (c.delta * root_ad) + d2 * d2 / std::pow(c.delta, delta_power));
  return 1.0 / inv;
}

MbEntry minimize_M(double b, const ConstantSet& c) {
  require_positive_delta(c);
  if (!(b >= 0.0)) {
    throw Error(ErrorKind::InvalidIntercept, "intercept b must be nonnegative");
  }
  const double lo = std::max(b * b, 1e-8);
  const double hi = 1e8 * std::max(b * b, 1.0);
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  auto objective = [&](double log_theta) {
    const double theta = std::clamp(std::exp(log_theta), lo, hi);
    return M_theta_b(theta, b, c);
  };

  constexpr int kScan = 64;
  double step = (log_hi - log_lo) / (kScan - 1);
  int best = 0;
  double best_value = objective(log_lo);
  for (int i = 1; i < kScan; ++i) {
    const double v = objective(log_lo + i * step);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }

  double a = log_lo + std::max(best - 1, 0) * step;
  double z = log_lo + std::min(best + 1, kScan - 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = z - inv_phi * (z - a);
  double x2 = a + inv_phi * (z - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (z - a > 1e-10) {
    if (f1 <= f2) {
      z = x2;
      x2 = x1;
      f2 = f1;
      x1 = z - inv_phi * (z - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (z - a);
      f2 = objective(x2);
    }
  }

  MbEntry entry{b, best_value, std::exp(log_lo + best * step)};
  for (double x : {a, z, x1, x2}) {
    const double v = objective(x);
    if (v < entry.M) {
      entry.M = v;
      entry.theta_argmin = std::clamp(std::exp(x), lo, hi);
    }
  }
  return entry;
}

const char* to_string(PrintedFormulaMatch m) noexcept {
  switch (m) {
    case PrintedFormulaMatch::None: return "none";
    case PrintedFormulaMatch::Delta2: return "delta2";
    case PrintedFormulaMatch::Delta4: return "delta4";
    case PrintedFormulaMatch::Both: return "both";
  }
  return "none";
}

RateCertificate certify(const ConstantSet& c, std::span<const double> b_values,
                        const CertifyOptions& options) {
  require_positive_delta(c);
  RateCertificate cert;
  cert.consts = c;
  cert.theta_star = optimal_theta(c);
  cert.omega = omega_theta(cert.theta_star, c);

  const int points = std::max(options.curve_points, 1);
  cert.omega_theta_curve.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double t = points == 1 ? 0.0 : 2.0 * k / (points - 1) - 1.0;
    const double theta = cert.theta_star * std::pow(10.0, options.curve_decades * t);
    cert.omega_theta_curve.emplace_back(theta, omega_theta(theta, c));
  }

  std::vector<double> bs(b_values.begin(), b_values.end());
  if (bs.empty()) bs = {0.0, cert.omega / 2.0, cert.omega};
  for (double b : bs) cert.Mb_table.push_back(minimize_M(b, c));

  cert.omega_paper_delta2 = omega_printed(c, 2);
  cert.omega_paper_delta4 = omega_printed(c, 4);
  const bool m2 = relative_difference(cert.omega_paper_delta2, cert.omega) <= 1e-9;
  const bool m4 = relative_difference(cert.omega_paper_delta4, cert.omega) <= 1e-9;
  cert.printed_match = m2 && m4 ? PrintedFormulaMatch::Both
                     : m2     ? PrintedFormulaMatch::Delta2
                     : m4     ? PrintedFormulaMatch::Delta4
                              : PrintedFormulaMatch::None;
  return cert;
}

RegionMembership region_contains(std::complex<double> lambda, const SectorRegion& region) {
  RegionMembership r;
  r.margin_re = -region.omega - lambda.real();
  r.margin_im = region.M * std::abs(lambda.real()) + region.b - std::abs(lambda.imag());
  r.inside = r.margin_re >= 0.0 && r.margin_im >= 0.0;
  return r;
}

RemarkMembership remark_regions_contain(std::complex<double> lambda, const ConstantSet& c) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  RemarkMembership r;
  const double re = lambda.real();
  const double abs_re = std::abs(re);
  const double slope = std::isfinite(c.nu) ? c.nu * abs_re : inf;
  const double intercept = c.delta > 0.0 ? 1.0 / c.delta : inf;
  r.margin_first_re = -re;
  r.margin_first_im = slope + intercept - std::abs(lambda.imag());
  r.first = r.margin_first_re >= 0.0 && r.margin_first_im >= 0.0;

  if (lambda == std::complex<double>(0.0, 0.0)) {
    r.margin_second = -c.delta;
    r.second = false;
    return r;
  }
  const double quotient = abs_re / (1.0 / (c.a0 * c.a0) + 1.0 / std::norm(lambda));
  r.margin_second = quotient - c.delta;
  r.second = r.margin_second >= 0.0;
  return r;
}

}  // namespace decaycert
