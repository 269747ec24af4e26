#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "decaycert/hilbert_scale.hpp"

namespace decaycert {

enum class ModelKind { Wave1d, SpringChain, RandomSectorial, Scalar };

/// Textual form `kind:p1,p2,...`:
///   wave1d:n,c0,c1,c2
///   spring_chain:n,k,c0,c1
///   random:n,seed,delta_floor,nu_cap   (alias random_sectorial)
///   scalar:a,d_re,d_im
struct ModelSpec {
  ModelKind kind = ModelKind::Scalar;
  std::vector<double> parameters;

  std::string to_string() const;
};

ModelSpec parse_model_spec(const std::string& text);
SystemPair build_model(const ModelSpec& spec);

/// Dirichlet Laplacian on (0,1) with n interior nodes,
/// A = (n+1)^2 tridiag(-1, 2, -1), and D = c0 I + (c1 + i c2) A.
SystemPair wave_1d(int n, double c0, double c1, double c2);

/// Chain of n unit masses joined by springs of stiffness k, fixed at the
/// left end and free at the right; Rayleigh damping D = c0 I + c1 A.
SystemPair spring_chain(int n, double k, double c0, double c1);

/// A = R*R/n + 0.1 I and D = delta_floor A + B*B/n + i gamma H with R, B
/// complex Gaussian and H random Hermitian; gamma is chosen so the sector
/// constant equals nu_cap. Deterministic in `seed`.
SystemPair random_sectorial(int n, std::uint64_t seed, double delta_floor, double nu_cap);

/// 1x1 system A = [a], D = [d_re + i d_im].
SystemPair scalar(double a, double d_re, double d_im);

}  // namespace decaycert
