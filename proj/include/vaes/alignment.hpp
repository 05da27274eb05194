// Copyright 2026 The vaes Authors.
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

// Post-training signals derived from pairwise judgements: reward-weighted
// regression weights and group-relative advantages over win rates.

#pragma once

#include <cmath>
#include <span>
#include <string_view>

#include <Eigen/Core>

#include "vaes/error.hpp"
#include "vaes/rubric.hpp"

namespace vaes {

// exp(15), the largest weight a 15-criterion sum can produce.
inline const double kMaxRwrWeight = std::exp(15.0);

// exp(-s). With `clamp`, the result is capped at kMaxRwrWeight.
double rwr_weight_from_score(double s, bool clamp = false) noexcept;

// exp(sum of the 15 criterion scores). Throws Error(kBadCriteriaCount) unless
// exactly 15 scores are given.
double rwr_weight_from_criteria(std::span<const PrefScore> scores, bool clamp = false);

// Round-robin outcomes within a group of G >= 2 candidates. Entry (a, b) is
// the preference of a over b; the matrix is antisymmetric with a zero
// diagonal.
class PairwiseMatrix {
 public:
  // Throws Error(kBadGroup) for G < 2 or entries outside {-1, 0, 1}, and
  // Error(kNotAntisymmetric) when m(a, b) != -m(b, a).
  explicit PairwiseMatrix(Eigen::MatrixXi m);

  // Builds the matrix from raw judge scores: s(a, b) is the judge's score for
  // a over b with a shown first. Entry (a, b) is the sign of
  // (s(a, b) - s(b, a)) / 2, antisymmetric by construction.
  static PairwiseMatrix from_bidirectional(const Eigen::MatrixXd& s);

  Eigen::Index size() const noexcept { return m_.rows(); }
  PrefScore at(Eigen::Index a, Eigen::Index b) const noexcept {
    return static_cast<PrefScore>(m_(a, b));
  }
  const Eigen::MatrixXi& matrix() const noexcept { return m_; }

 private:
  Eigen::MatrixXi m_;
};

// Per candidate: (wins + 0.5 * ties) / (G - 1).
Eigen::VectorXd win_rates(const PairwiseMatrix& m);

enum class StdMode { kPopulation, kSample };

std::string_view std_mode_name(StdMode m) noexcept;
// Throws Error(kBadConfig) on anything but "population" / "sample".
StdMode std_mode_from_name(std::string_view name);

// (R_i - mean) / std over a group of G >= 2 finite rewards; all zeros when
// std is 0. Throws Error(kBadGroup) on a short group or a non-finite reward.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> group_advantages(
    const Eigen::MatrixBase<Derived>& rewards, StdMode mode = StdMode::kPopulation) {
  using Scalar = typename Derived::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index g = rewards.size();
  if (g < 2) throw Error(ErrorCode::kBadGroup, "a group needs at least two rewards");
  if (!rewards.allFinite()) throw Error(ErrorCode::kBadGroup, "group rewards must be finite");
  const Vec r = rewards.reshaped();
  // Checked on the inputs: the mean of equal values can be off by an ulp,
  // which would turn rounding noise into unit advantages.
  if ((r.array() == r(0)).all()) return Vec::Zero(g);
  const Scalar mean = r.mean();
  const Vec centred = r.array() - mean;
  const Scalar denom = static_cast<Scalar>(mode == StdMode::kPopulation ? g : g - 1);
  return centred / std::sqrt(centred.squaredNorm() / denom);
}

inline Eigen::VectorXd group_advantages(std::span<const double> rewards,
                                        StdMode mode = StdMode::kPopulation) {
  return group_advantages(
      Eigen::Map<const Eigen::VectorXd>(rewards.data(), static_cast<Eigen::Index>(rewards.size())),
      mode);
}

}  // namespace vaes
