#pragma once

#include <complex>
#include <span>
#include <vector>

#include "decaycert/constants.hpp"

namespace decaycert {

/// 1/omega_theta = 1/beta + ||D||^2/(2 delta) + (theta/alpha + 1/(theta delta))/2
///               + sqrt((theta/alpha + 1/(theta delta) + ||D||^2/delta)^2 - 4/(alpha delta))/2
///
/// Throws NonPositiveDelta when delta <= 0 and InvalidArgument when theta <= 0.
double omega_theta(double theta, const ConstantSet& c);

/// M_{theta,b} = nu + 2/(delta (b + sqrt(b^2 + 4 theta))) + (sqrt(theta) - b)/beta,
/// valid for 0 <= b <= sqrt(theta). Throws InvalidIntercept otherwise.
double M_theta_b(double theta, double b, const ConstantSet& c);

/// theta* = sqrt(alpha/delta), the maximizer of omega_theta.
double optimal_theta(const ConstantSet& c);

/// Closed forms of the certified rate as printed in the source, with the
/// last radical term read as ||D||^4/delta^2 (delta_power = 2) or
/// ||D||^4/delta^4 (delta_power = 4).
double omega_printed(const ConstantSet& c, int delta_power);

struct MbEntry {
  double b = 0.0;
  double M = 0.0;
  double theta_argmin = 0.0;
};

/// min over theta >= max(b^2, 1e-8) of M_theta_b: coarse 64-point log scan
/// over [max(b^2, 1e-8), 1e8 max(b^2, 1)] followed by golden-section on
/// log theta to relative tolerance 1e-10.
MbEntry minimize_M(double b, const ConstantSet& c);

enum class PrintedFormulaMatch { None, Delta2, Delta4, Both };
const char* to_string(PrintedFormulaMatch m) noexcept;

struct RateCertificate {
  ConstantSet consts;
  double theta_star = 0.0;
  double omega = 0.0;
  std::vector<std::pair<double, double>> omega_theta_curve;  // (theta, omega_theta)
  std::vector<MbEntry> Mb_table;
  double omega_paper_delta2 = 0.0;
  double omega_paper_delta4 = 0.0;
  PrintedFormulaMatch printed_match = PrintedFormulaMatch::None;
};

struct CertifyOptions {
  /// Points of the sampled omega_theta curve, log-spaced over
  /// [theta*/1e3, theta* 1e3]. An odd count puts theta* at the center.
  int curve_points = 65;
  double curve_decades = 3.0;
};

/// Certified rate omega = omega_theta(theta*) and slopes M_b for each b.
/// An empty `b_values` selects the default family {0, omega/2, omega}.
RateCertificate certify(const ConstantSet& c, std::span<const double> b_values,
                        const CertifyOptions& options = {});

/// {lambda : Re lambda <= -omega, |Im lambda| <= M |Re lambda| + b}
struct SectorRegion {
  double omega = 0.0;
  double M = 0.0;
  double b = 0.0;
};

struct RegionMembership {
  bool inside = false;
  double margin_re = 0.0;  // -omega - Re lambda
  double margin_im = 0.0;  // M |Re lambda| + b - |Im lambda|
};

RegionMembership region_contains(std::complex<double> lambda, const SectorRegion& region);

struct RemarkMembership {
  bool first = false;   // Re lambda <= 0 and |Im lambda| <= nu |Re lambda| + 1/delta
  bool second = false;  // delta <= |Re lambda| / (a0^-2 + |lambda|^-2)
  double margin_first_re = 0.0;
  double margin_first_im = 0.0;
  double margin_second = 0.0;  // |Re lambda| / (a0^-2 + |lambda|^-2) - delta
};

/// Membership in the two earlier spectral enclosures of the pencil.
/// lambda = 0 fails the second region by convention.
RemarkMembership remark_regions_contain(std::complex<double> lambda, const ConstantSet& c);

}  // namespace decaycert
