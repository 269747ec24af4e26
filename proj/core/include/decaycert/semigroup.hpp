#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "decaycert/hilbert_scale.hpp"
#include "decaycert/matrix_exp.hpp"
#include "decaycert/rate_bounds.hpp"

namespace decaycert {

/// Gram matrix Q of the theta inner product [w, v]_theta = v* Q w on the
/// stacked state (w1, w2), with its Hermitian square-root factors. At
/// theta = 0 this is the energy metric diag(I, A).
struct ThetaMetric {
  double theta = 0.0;
  Matrix Q;
  Matrix Qhalf;
  Matrix Qneghalf;
  double lambda_min = 0.0;  // smallest eigenvalue of Q
};

ThetaMetric make_theta_metric(const SystemPair& sys, double theta);

/// Term-by-term evaluation of
///   (w1,v1) + th (w1,v1)_{-1} + (w2,v2)_1 + th (w2,v2) + th (Dw2,Dv2)_{-1}
///   + th (Dw2,v1)_{-1} + th (w1,Dv2)_{-1}
/// where (x,y)_s = <A^s x, y> and <x, y> = y* x.
Complex theta_inner(const SystemPair& sys, const StateVector& w, const StateVector& v, double theta);

/// |[w,w]_theta - (||w1||^2 + ||w2||_1^2 + th ||w2||^2 + th ||w1 + D w2||_{-1}^2)|
double theta_norm_identity_check(const SystemPair& sys, const StateVector& w, double theta);

struct FormCheck {
  double theta = 0.0;
  double b = 0.0;
  double omega_theta = 0.0;
  double M = 0.0;
  /// min over samples of (-omega_theta |w|^2 - Re[Tw,w]) / |w|^2
  double margin_re = 0.0;
  /// min over samples of (M |Re[Tw,w]| + b |w|^2 - |Im[Tw,w]|) / |w|^2
  double margin_im = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  bool passed(double tol = 1e-9) const { return margin_re >= -tol && margin_im >= -tol; }
};

/// Samples complex-normal states and checks both sesquilinear-form
/// inequalities at (theta, b), normalized by |w|^2_theta.
FormCheck form_inequalities_check(const SystemPair& sys, const ConstantSet& consts, double theta,
                                  double b, std::size_t samples, std::uint64_t seed);

/// Evaluates several intercepts against one sample set; cheaper than
/// repeated form_inequalities_check calls.
std::vector<FormCheck> form_inequalities_check(const SystemPair& sys, const ConstantSet& consts,
                                               double theta, const std::vector<double>& bs,
                                               std::size_t samples, std::uint64_t seed);

/// ||Qhalf exp(t T) Qneghalf||_2, the semigroup norm in the given metric.
double semigroup_norm(const SystemPair& sys, const ThetaMetric& metric, double t);
double semigroup_norm(const MatrixExponential& propagator, const ThetaMetric& metric, double t);

/// kappa = sqrt(mu_max / mu_min) for the generalized eigenvalues mu of Q
/// against the energy Gram matrix; ||exp(tT)||_energy <= kappa e^{-omega_theta t}.
double energy_envelope_constant(const SystemPair& sys, double theta);

struct DecayCurve {
  double theta = 0.0;
  double omega_theta = 0.0;
  double kappa = 1.0;
  std::vector<double> times;
  std::vector<double> theta_norm;
  std::vector<double> energy_norm;
  std::vector<double> envelope;        // e^{-omega_theta t}
  std::vector<double> kappa_envelope;  // kappa e^{-omega_theta t}
  double empirical_rate = 0.0;         // -log(theta_norm(t_max)) / t_max
  std::optional<double> violation_time;
  std::optional<double> energy_violation_time;
};

enum class EnvelopePolicy { Throw, Record };

/// 0 followed by (points - 1) log-spaced times ending at t_max.
std::vector<double> default_time_grid(double t_max, int points = 64);

/// Samples semigroup norms in the theta and energy metrics and checks
/// theta_norm(t) <= (1 + tol) e^{-omega_theta t} and
/// energy_norm(t) <= (1 + tol) kappa e^{-omega_theta t}. Under
/// EnvelopePolicy::Throw a violation raises EnvelopeViolation.
DecayCurve decay_curve(const SystemPair& sys, const ConstantSet& consts, double theta,
                       const std::vector<double>& times, EnvelopePolicy policy = EnvelopePolicy::Throw,
                       double tol = 1e-8);

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> u;
  std::vector<Vector> du;
  std::vector<double> energy;  // ||u(t)||_1^2 + ||u'(t)||^2
  std::vector<double> bound;   // kappa^2 e^{-2 omega t} energy(0), empty without a certificate
  std::optional<double> violation_time;
};

/// (u'(t), u(t)) = exp(t T) (u1, u0). With a certificate the energy is
/// checked against kappa(theta*)^2 e^{-2 omega t} times the initial energy.
Trajectory solve_cauchy(const SystemPair& sys, const Vector& u0, const Vector& u1,
                        const std::vector<double>& times, const RateCertificate* cert = nullptr,
                        EnvelopePolicy policy = EnvelopePolicy::Throw, double tol = 1e-8);

}  // namespace decaycert
