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

#ifndef SCENGEN_TYPES_HPP
#define SCENGEN_TYPES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace scengen {

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec2T = Eigen::Matrix<Scalar, 2, 1>;

using Vec = VecX<double>;
using Mat = MatX<double>;
using Vec2 = Vec2T<double>;

/// Raised for invalid configuration, presets, shapes or file contents.
/// Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for numeric failures (non-finite inputs or intermediates).
/// Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scengen

#endif  // SCENGEN_TYPES_HPP
