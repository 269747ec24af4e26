#include "decaycert/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "decaycert/random.hpp"
#include "decaycert/spectrum.hpp"

namespace decaycert {
namespace {

double largest_singular_value(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix energy_inv_sqrt(const SystemPair& sys) {
  const Index n = sys.dimension();
  Matrix g = Matrix::Zero(2 * n, 2 * n);
  g.topLeftCorner(n, n) = Matrix::Identity(n, n);
  g.bottomRightCorner(n, n) = sys.scale().inv_sqrt();
  return g;
}

}  // namespace

ThetaMetric make_theta_metric(const SystemPair& sys, double theta) {
  if (!(theta >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "theta must be nonnegative");
  }
  ThetaMetric metric;
  metric.theta = theta;
  const Matrix q = build_QT(sys, theta).Q;
  metric.Q = (q + q.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(metric.Q);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigensolverFailure, "Hermitian eigensolver failed on Q");
  }
  const RealVector& vals = es.eigenvalues();
  if (!(vals(0) > 0.0)) {
    throw Error(ErrorKind::NotPositiveDefinite, "theta Gram matrix is not positive definite");
  }
  metric.lambda_min = vals(0);
  const Matrix& vecs = es.eigenvectors();
  metric.Qhalf = vecs * vals.cwiseSqrt().cast<Complex>().asDiagonal() * vecs.adjoint();
  metric.Qneghalf = vecs * vals.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * vecs.adjoint();
  return metric;
}

Complex theta_inner(const SystemPair& sys, const StateVector& w, const StateVector& v, double theta) {
  const Index n = sys.dimension();
  if (w.w1.size() != n || w.w2.size() != n || v.w1.size() != n || v.w2.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "state vector components do not match system dimension");
  }
  const Matrix& a = sys.a();
  const Matrix& a_inv = sys.scale().inverse();
  const Matrix& d = sys.d();
  const Vector dw2 = d * w.w2;
  const Vector dv2 = d * v.w2;

  // (x, y)_s = <A^s x, y> = y* A^s x
  Complex sum = v.w1.dot(w.w1);
  sum += theta * v.w1.dot(a_inv * w.w1);
  sum += v.w2.dot(a * w.w2);
  sum += theta * v.w2.dot(w.w2);
  sum += theta * dv2.dot(a_inv * dw2);
  sum += theta * v.w1.dot(a_inv * dw2);
  sum += theta * dv2.dot(a_inv * w.w1);
  return sum;
}

double theta_norm_identity_check(const SystemPair& sys, const StateVector& w, double theta) {
  const double form = theta_inner(sys, w, w, theta).real();
  const double v = w.w1.norm();
  const double p1 = norm_s(sys, w.w2, 1);
  const double p0 = w.w2.norm();
  const double mixed = norm_s(sys, w.w1 + sys.d() * w.w2, -1);
  const double grouped = v * v + p1 * p1 + theta * p0 * p0 + theta * mixed * mixed;
  return std::abs(form - grouped);
}

std::vector<FormCheck> form_inequalities_check(const SystemPair& sys, const ConstantSet& consts,
                                               double theta, const std::vector<double>& bs,
                                               std::size_t samples, std::uint64_t seed) {
  const double w_theta = omega_theta(theta, consts);
  std::vector<FormCheck> checks;
  checks.reserve(bs.size());
  for (double b : bs) {
    checks.push_back(FormCheck{theta, b, w_theta, M_theta_b(theta, b, consts),
                               std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity(), samples, seed});
  }

  const Matrix q = make_theta_metric(sys, theta).Q;
  const Matrix block = build_linearization(sys).block;
  const Index dim = block.rows();
  Rng rng(seed);

  constexpr std::size_t kBatch = 1024;
  for (std::size_t start = 0; start < samples; start += kBatch) {
    const Index count = static_cast<Index>(std::min(kBatch, samples - start));
    const Matrix w = rng.complex_normal_matrix(dim, count);
    const Matrix qw = q * w;
    const Matrix qtw = q * (block * w);
    for (Index j = 0; j < count; ++j) {
      const double norm2 = w.col(j).dot(qw.col(j)).real();
      if (!(norm2 > 0.0)) continue;
      const Complex form = w.col(j).dot(qtw.col(j));  // [Tw, w]_theta = w* Q T w
      const double re = form.real() / norm2;
      const double im = std::abs(form.imag()) / norm2;
      for (FormCheck& c : checks) {
        c.margin_re = std::min(c.margin_re, -c.omega_theta - re);
        c.margin_im = std::min(c.margin_im, c.M * std::abs(re) + c.b - im);
      }
    }
  }
  return checks;
}

FormCheck form_inequalities_check(const SystemPair& sys, const ConstantSet& consts, double theta,
                                  double b, std::size_t samples, std::uint64_t seed) {
  return form_inequalities_check(sys, consts, theta, std::vector<double>{b}, samples, seed).front();
}

double semigroup_norm(const MatrixExponential& propagator, const ThetaMetric& metric, double t) {
  if (!(t >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "time must be nonnegative");
  }
  if (t == 0.0) return 1.0;
  return largest_singular_value(metric.Qhalf * propagator.at(t) * metric.Qneghalf);
}

double semigroup_norm(const SystemPair& sys, const ThetaMetric& metric, double t) {
  return semigroup_norm(MatrixExponential(build_linearization(sys).block), metric, t);
}

double energy_envelope_constant(const SystemPair& sys, double theta) {
  const Matrix g = energy_inv_sqrt(sys);
  const Matrix q = make_theta_metric(sys, theta).Q;
  const Matrix m = g * q * g;
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const RealVector& mu = es.eigenvalues();
  return std::max(1.0, std::sqrt(mu(mu.size() - 1) / mu(0)));
}

std::vector<double> default_time_grid(double t_max, int points) {
  std::vector<double> times{0.0};
  if (points <= 1 || !(t_max > 0.0)) return times;
  const int log_points = points - 1;
  const double first = t_max * 1e-3;
  for (int k = 0; k < log_points; ++k) {
    const double frac = log_points == 1 ? 1.0 : static_cast<double>(k) / (log_points - 1);
    times.push_back(first * std::pow(t_max / first, frac));
  }
  times.back() = t_max;
  return times;
}

DecayCurve decay_curve(const SystemPair& sys, const ConstantSet& consts, double theta,
                       const std::vector<double>& times, EnvelopePolicy policy, double tol) {
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "time grid must be nonnegative and increasing");
  }
  DecayCurve curve;
  curve.theta = theta;
  curve.omega_theta = omega_theta(theta, consts);
  curve.kappa = energy_envelope_constant(sys, theta);
  curve.times = times;

  const MatrixExponential propagator(build_linearization(sys).block);
  const ThetaMetric metric = make_theta_metric(sys, theta);
  const ThetaMetric energy = make_theta_metric(sys, 0.0);

  for (double t : times) {
    const double env = std::exp(-curve.omega_theta * t);
    const double tn = semigroup_norm(propagator, metric, t);
    const double en = semigroup_norm(propagator, energy, t);
    curve.theta_norm.push_back(tn);
    curve.energy_norm.push_back(en);
    curve.envelope.push_back(env);
    curve.kappa_envelope.push_back(curve.kappa * env);
    if (!curve.violation_time && tn > (1.0 + tol) * env) curve.violation_time = t;
    if (!curve.energy_violation_time && en > (1.0 + tol) * curve.kappa * env) {
      curve.energy_violation_time = t;
    }
  }
  if (!times.empty() && times.back() > 0.0) {
    curve.empirical_rate = -std::log(curve.theta_norm.back()) / times.back();
  }

  if (policy == EnvelopePolicy::Throw) {
    if (curve.violation_time) {
      throw Error(ErrorKind::EnvelopeViolation,
                  "theta-metric semigroup norm exceeds e^{-omega_theta t} at t = " +
                      std::to_string(*curve.violation_time));
    }
    if (curve.energy_violation_time) {
      throw Error(ErrorKind::EnvelopeViolation,
                  "energy-metric semigroup norm exceeds kappa e^{-omega_theta t} at t = " +
                      std::to_string(*curve.energy_violation_time));
    }
  }
  return curve;
}

Trajectory solve_cauchy(const SystemPair& sys, const Vector& u0, const Vector& u1,
                        const std::vector<double>& times, const RateCertificate* cert,
                        EnvelopePolicy policy, double tol) {
  const Index n = sys.dimension();
  if (u0.size() != n || u1.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "initial data must have the system dimension");
  }
  const MatrixExponential propagator(build_linearization(sys).block);
  Vector w0(2 * n);
  w0 << u1, u0;

  auto energy_of = [&](const Vector& u, const Vector& du) {
    return du.squaredNorm() + u.dot(sys.a() * u).real();
  };
  const double e0 = energy_of(u0, u1);

  double kappa = 1.0;
  if (cert) kappa = energy_envelope_constant(sys, cert->theta_star);

  Trajectory traj;
  traj.times = times;
  for (double t : times) {
    const Vector w = propagator.at(t) * w0;
    traj.du.push_back(w.head(n));
    traj.u.push_back(w.tail(n));
    const double e = energy_of(traj.u.back(), traj.du.back());
    traj.energy.push_back(e);
    if (cert) {
      const double bound = kappa * kappa * std::exp(-2.0 * cert->omega * t) * e0;
      traj.bound.push_back(bound);
      if (!traj.violation_time && e > (1.0 + tol) * bound) traj.violation_time = t;
    }
  }
  if (policy == EnvelopePolicy::Throw && traj.violation_time) {
    throw Error(ErrorKind::EnvelopeViolation,
                "trajectory energy exceeds kappa^2 e^{-2 omega t} E(0) at t = " +
                    std::to_string(*traj.violation_time));
  }
  return traj;
}

}  // namespace decaycert
