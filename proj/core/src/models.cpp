#include "decaycert/models.hpp"

#include <cmath>
#include <sstream>

#include "decaycert/constants.hpp"
#include "decaycert/random.hpp"

namespace decaycert {
namespace {

[[noreturn]] void bad_spec(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "model spec: " + what);
}

int as_dimension(double v) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) bad_spec("dimension must be a positive integer");
  return static_cast<int>(v);
}

Matrix laplacian(int n) {
  Matrix t = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    t(i, i) = 2.0;
    if (i + 1 < n) t(i, i + 1) = t(i + 1, i) = -1.0;
  }
  return t;
}

}  // namespace

std::string ModelSpec::to_string() const {
  std::ostringstream ss;
  ss.precision(17);
  switch (kind) {
    case ModelKind::Wave1d: ss << "wave1d"; break;
    case ModelKind::SpringChain: ss << "spring_chain"; break;
    case ModelKind::RandomSectorial: ss << "random"; break;
    case ModelKind::Scalar: ss << "scalar"; break;
  }
  for (std::size_t i = 0; i < parameters.size(); ++i) ss << (i == 0 ? ':' : ',') << parameters[i];
  return ss.str();
}

ModelSpec parse_model_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  ModelSpec spec;
  std::size_t expected = 0;
  if (name == "wave1d") {
    spec.kind = ModelKind::Wave1d;
    expected = 4;
  } else if (name == "spring_chain") {
    spec.kind = ModelKind::SpringChain;
    expected = 4;
  } else if (name == "random" || name == "random_sectorial") {
    spec.kind = ModelKind::RandomSectorial;
    expected = 4;
  } else if (name == "scalar") {
    spec.kind = ModelKind::Scalar;
    expected = 3;
  } else {
    bad_spec("unknown model kind '" + name + "'");
  }

  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        spec.parameters.push_back(std::stod(item, &used));
        if (used != item.size()) bad_spec("malformed number '" + item + "'");
      } catch (const std::logic_error&) {
        bad_spec("malformed number '" + item + "'");
      }
    }
  }
  if (spec.parameters.size() != expected) {
    bad_spec("'" + name + "' expects " + std::to_string(expected) + " parameters, got " +
             std::to_string(spec.parameters.size()));
  }
  return spec;
}

SystemPair build_model(const ModelSpec& spec) {
  const auto& p = spec.parameters;
  switch (spec.kind) {
    case ModelKind::Wave1d: return wave_1d(as_dimension(p.at(0)), p.at(1), p.at(2), p.at(3));
    case ModelKind::SpringChain: return spring_chain(as_dimension(p.at(0)), p.at(1), p.at(2), p.at(3));
    case ModelKind::RandomSectorial: {
      if (!(p.at(1) >= 0.0) || p.at(1) != std::floor(p.at(1))) bad_spec("seed must be a nonnegative integer");
      return random_sectorial(as_dimension(p.at(0)), static_cast<std::uint64_t>(p.at(1)), p.at(2), p.at(3));
    }
    case ModelKind::Scalar: return scalar(p.at(0), p.at(1), p.at(2));
  }
  bad_spec("unknown model kind");
}

SystemPair wave_1d(int n, double c0, double c1, double c2) {
  if (n < 1) bad_spec("wave1d needs n >= 1");
  if (!(c1 > 0.0) || !(c0 >= 0.0) || !(c2 >= 0.0)) bad_spec("wave1d needs c1 > 0 and c0, c2 >= 0");
  const double inv_h2 = static_cast<double>(n + 1) * (n + 1);
  const Matrix a = inv_h2 * laplacian(n);
  const Matrix d = c0 * Matrix::Identity(n, n) + Complex(c1, c2) * a;
  return validate_system(a, d);
}

SystemPair spring_chain(int n, double k, double c0, double c1) {
  if (n < 1) bad_spec("spring_chain needs n >= 1");
  if (!(k > 0.0) || !(c0 >= 0.0) || !(c1 >= 0.0)) bad_spec("spring_chain needs k > 0 and c0, c1 >= 0");
  Matrix a = k * laplacian(n);
  a(n - 1, n - 1) = k;  // free right end
  const Matrix d = c0 * Matrix::Identity(n, n) + c1 * a;
  return validate_system(a, d);
}

SystemPair random_sectorial(int n, std::uint64_t seed, double delta_floor, double nu_cap) {
  if (n < 1) bad_spec("random needs n >= 1");
  if (!(delta_floor > 0.0) || !(nu_cap >= 0.0)) bad_spec("random needs delta_floor > 0 and nu_cap >= 0");
  Rng rng(seed);
  const double scale = 1.0 / n;
  const Matrix r = rng.complex_normal_matrix(n, n);
  const Matrix b = rng.complex_normal_matrix(n, n);
  const Matrix g = rng.complex_normal_matrix(n, n);

  Matrix a = scale * (r.adjoint() * r) + 0.1 * Matrix::Identity(n, n);
  a = (a + a.adjoint()) / 2.0;
  Matrix s = delta_floor * a + scale * (b.adjoint() * b);
  s = (s + s.adjoint()) / 2.0;
  const Matrix h = (g + g.adjoint()) / 2.0;

  double gamma = 0.0;
  if (nu_cap > 0.0) {
    // Sector constant of S + iH, then rescale H so it becomes nu_cap.
    const ConstantSet unit = compute_constants(validate_system(a, s + Complex(0.0, 1.0) * h));
    if (unit.nu > 0.0 && std::isfinite(unit.nu)) gamma = nu_cap / unit.nu;
  }
  return validate_system(a, s + Complex(0.0, gamma) * h);
}

SystemPair scalar(double a, double d_re, double d_im) {
  if (!(a > 0.0) || !(d_re >= 0.0)) bad_spec("scalar needs a > 0 and d_re >= 0");
  Matrix am(1, 1), dm(1, 1);
  am(0, 0) = a;
  dm(0, 0) = Complex(d_re, d_im);
  return validate_system(am, dm);
}

}  // namespace decaycert
