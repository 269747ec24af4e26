#include "decaycert/matrix_exp.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace decaycert {
namespace {

double norm1(const Matrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

// Numerator/denominator pieces U (odd) and V (even) so that
// r_m(M) = (V - U)^{-1} (V + U).
template <std::size_t N>
void pade_low(const Matrix& m, const std::array<double, N>& b, Matrix& u, Matrix& v) {
  const Index n = m.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix m2 = m * m;
  Matrix power = id;
  Matrix odd = Matrix::Zero(n, n);
  v = Matrix::Zero(n, n);
  for (std::size_t k = 0; k + 1 < N; k += 2) {
    v += b[k] * power;
    odd += b[k + 1] * power;
    power = power * m2;
  }
  u = m * odd;
}

void pade13(const Matrix& m, Matrix& u, Matrix& v) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const Index n = m.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix m2 = m * m;
  const Matrix m4 = m2 * m2;
  const Matrix m6 = m4 * m2;
  const Matrix inner_u = b[13] * m6 + b[11] * m4 + b[9] * m2;
  u = m * (m6 * inner_u + b[7] * m6 + b[5] * m4 + b[3] * m2 + b[1] * id);
  const Matrix inner_v = b[12] * m6 + b[10] * m4 + b[8] * m2;
  v = m6 * inner_v + b[6] * m6 + b[4] * m4 + b[2] * m2 + b[0] * id;
}

}  // namespace

Matrix expm_pade(const Matrix& m) {
  const Index n = m.rows();
  if (n == 0) return m;

  static constexpr std::array<double, 4> b3 = {120.0, 60.0, 12.0, 1.0};
  static constexpr std::array<double, 6> b5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr std::array<double, 8> b7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                               25200.0,    1512.0,    56.0,      1.0};
  static constexpr std::array<double, 10> b9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                                30270240.0,    2162160.0,    110880.0,     3960.0,
                                                90.0,          1.0};
  // Largest 1-norms for which each approximant reaches unit roundoff.
  constexpr double theta3 = 1.495585217958292e-2;
  constexpr double theta5 = 2.539398330063230e-1;
  constexpr double theta7 = 9.504178996162932e-1;
  constexpr double theta9 = 2.097847961257068e0;
  constexpr double theta13 = 5.371920351148152e0;

  const double norm = norm1(m);
  Matrix u, v;
  int squarings = 0;
  if (norm <= theta3) {
    pade_low(m, b3, u, v);
  } else if (norm <= theta5) {
    pade_low(m, b5, u, v);
  } else if (norm <= theta7) {
    pade_low(m, b7, u, v);
  } else if (norm <= theta9) {
    pade_low(m, b9, u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
    pade13(m / std::ldexp(1.0, squarings), u, v);
  }

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

MatrixExponential::MatrixExponential(Matrix generator, double max_condition)
    : generator_(std::move(generator)) {
  if (generator_.rows() == 0) return;
  Eigen::ComplexEigenSolver<Matrix> es(generator_, true);
  if (es.info() != Eigen::Success) return;

  vectors_ = es.eigenvectors();
  Eigen::JacobiSVD<Matrix> svd(vectors_);
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  condition_ = smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
  if (!(condition_ < max_condition)) return;

  eigenvalues_ = es.eigenvalues();
  vectors_inv_ = vectors_.partialPivLu().inverse();
  method_ = Method::Diagonalization;
}

Matrix MatrixExponential::at(double t) const {
  if (method_ == Method::Pade) return expm_pade(t * generator_);
  Vector scaled(eigenvalues_.size());
  for (Index i = 0; i < eigenvalues_.size(); ++i) scaled(i) = std::exp(t * eigenvalues_(i));
  return vectors_ * scaled.asDiagonal() * vectors_inv_;
}

}  // namespace decaycert
