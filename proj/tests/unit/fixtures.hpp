#pragma once

#include <cstdint>
#include <vector>

#include "listhyp/dist_core.hpp"
#include "listhyp/np.hpp"
#include "listhyp/rng.hpp"

namespace listhyp::testing {

/// Three hypotheses, three outcomes, with an exact tie at outcome 0 for L = 2.
inline JointDistribution j3() {
  return validate_joint({{0.20, 0.05, 0.05}, {0.05, 0.20, 0.05}, {0.05, 0.05, 0.30}});
}

inline JointDistribution diagonal(std::uint32_t M) {
  Matrix raw(M, std::vector<double>(M, 0.0));
  for (std::uint32_t i = 0; i < M; ++i) raw[i][i] = 1.0 / M;
  return validate_joint(raw);
}

/// Uniform prior with Y independent of X: every entry P_Y(y) / M.
inline JointDistribution independent(std::uint32_t M, std::vector<double> p_y) {
  Matrix raw(M, std::vector<double>(p_y.size()));
  for (auto& row : raw) {
    for (std::size_t y = 0; y < p_y.size(); ++y) row[y] = p_y[y] / M;
  }
  return validate_joint(raw);
}

/// Random pair on `size` atoms; some atoms are zeroed on one side to exercise the
/// infinite- and zero-ratio conventions.
inline MassPair random_pair(Rng& rng, std::size_t size) {
  auto p = sample_dirichlet(rng, size, 0.7);
  auto q = sample_dirichlet(rng, size, 0.7);
  if (size > 3) {
    const auto a = rng.uniform_index(size);
    const auto b = rng.uniform_index(size);
    p[a] = 0.0;
    q[b] = 0.0;
    double sp = 0.0, sq = 0.0;
    for (auto v : p) sp += v;
    for (auto v : q) sq += v;
    if (sp > 0.0 && sq > 0.0) {
      for (auto& v : p) v /= sp;
      for (auto& v : q) v /= sq;
    } else {
      p = sample_dirichlet(rng, size, 1.0);
      q = sample_dirichlet(rng, size, 1.0);
    }
  }
  // Occasionally duplicate a ratio to create a multi-atom class.
  if (size > 2 && rng.uniform01() < 0.3 && p[0] > 0.0 && q[0] > 0.0 && q[1] > 0.0) {
    const double target = p[0] / q[0] * q[1];
    const double shift = target - p[1];
    if (p[2] - shift >= 0.0) {
      p[1] = target;
      p[2] -= shift;
    }
  }
  return MassPair(p, q);
}

}  // namespace listhyp::testing
