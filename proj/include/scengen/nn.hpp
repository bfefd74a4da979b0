// Copyright 2026 The scengen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCENGEN_NN_HPP
#define SCENGEN_NN_HPP

#include <cmath>

#include "scengen/types.hpp"

// Scalar-generic numeric kernels shared by the policy and its tests.

namespace scengen {

template <typename Scalar>
Scalar softplus(Scalar x) {
  // log1p(exp(x)) with the usual overflow guard for large x.
  if (x > Scalar(30)) return x;
  return std::log1p(std::exp(x));
}

template <typename Scalar>
Scalar sigmoid(Scalar x) {
  return Scalar(1) / (Scalar(1) + std::exp(-x));
}

/// Log-density of N(mu, sigma^2) evaluated at x. sigma must be positive.
template <typename Scalar>
Scalar gaussian_log_pdf(Scalar x, Scalar mu, Scalar sigma) {
  constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5*ln(2*pi)
  const Scalar z = (x - mu) / sigma;
  return -Scalar(kHalfLog2Pi) - std::log(sigma) - Scalar(0.5) * z * z;
}

/// Differential entropy of N(mu, sigma^2): 0.5*ln(2*pi*e*sigma^2).
template <typename Scalar>
Scalar gaussian_entropy(Scalar sigma) {
  constexpr double kHalfLog2PiE = 1.41893853320467274178;  // 0.5*ln(2*pi*e)
  return Scalar(kHalfLog2PiE) + std::log(sigma);
}

/// y = tanh(W*x + b) evaluated as one Eigen expression.
template <typename DW, typename DX, typename DB>
VecX<typename DW::Scalar> dense_tanh(const Eigen::MatrixBase<DW>& weights,
                                     const Eigen::MatrixBase<DX>& input,
                                     const Eigen::MatrixBase<DB>& bias) {
  return ((weights * input + bias).array().tanh()).matrix();
}

}  // namespace scengen

#endif  // SCENGEN_NN_HPP
