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

#include "vaes/alignment.hpp"

#include <algorithm>
#include <string>

namespace vaes {

double rwr_weight_from_score(double s, bool clamp) noexcept {
  const double w = std::exp(-s);
  return clamp ? std::min(w, kMaxRwrWeight) : w;
}

double rwr_weight_from_criteria(std::span<const PrefScore> scores, bool clamp) {
  if (scores.size() != static_cast<std::size_t>(kNumCriteria)) {
    throw Error(ErrorCode::kBadCriteriaCount,
                "expected 15 criterion scores, got " + std::to_string(scores.size()));
  }
  int sum = 0;
  for (PrefScore s : scores) sum += to_int(s);
  const double w = std::exp(static_cast<double>(sum));
  return clamp ? std::min(w, kMaxRwrWeight) : w;
}

PairwiseMatrix::PairwiseMatrix(Eigen::MatrixXi m) : m_(std::move(m)) {
  if (m_.rows() < 2 || m_.rows() != m_.cols()) {
    throw Error(ErrorCode::kBadGroup, "pairwise matrix must be square with G >= 2");
  }
  for (Eigen::Index a = 0; a < m_.rows(); ++a) {
    for (Eigen::Index b = 0; b < m_.cols(); ++b) {
      if (m_(a, b) < -1 || m_(a, b) > 1) {
        throw Error(ErrorCode::kBadGroup, "pairwise entries must be -1, 0 or 1");
      }
      if (m_(a, b) != -m_(b, a)) {
        throw Error(ErrorCode::kNotAntisymmetric,
                    "entry (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) +
                        ") is not the negation of its mirror");
      }
    }
  }
}

PairwiseMatrix PairwiseMatrix::from_bidirectional(const Eigen::MatrixXd& s) {
  if (s.rows() < 2 || s.rows() != s.cols()) {
    throw Error(ErrorCode::kBadGroup, "score matrix must be square with G >= 2");
  }
  if (!s.allFinite()) throw Error(ErrorCode::kBadGroup, "score matrix must be finite");
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(s.rows(), s.cols());
  for (Eigen::Index a = 0; a < s.rows(); ++a) {
    for (Eigen::Index b = 0; b < s.cols(); ++b) {
      if (a != b) m(a, b) = to_int(sign_of((s(a, b) - s(b, a)) / 2.0));
    }
  }
  return PairwiseMatrix(std::move(m));
}

Eigen::VectorXd win_rates(const PairwiseMatrix& m) {
  const Eigen::Index g = m.size();
  Eigen::VectorXd rates(g);
  for (Eigen::Index a = 0; a < g; ++a) {
    double credit = 0.0;
    for (Eigen::Index b = 0; b < g; ++b) {
      if (a == b) continue;
      const int v = to_int(m.at(a, b));
      credit += v > 0 ? 1.0 : (v == 0 ? 0.5 : 0.0);
    }
    rates[a] = credit / static_cast<double>(g - 1);
  }
  return rates;
}

std::string_view std_mode_name(StdMode m) noexcept {
  return m == StdMode::kPopulation ? "population" : "sample";
}

StdMode std_mode_from_name(std::string_view name) {
  if (name == "population") return StdMode::kPopulation;
  if (name == "sample") return StdMode::kSample;
  throw Error(ErrorCode::kBadConfig,
              "std mode must be \"population\" or \"sample\", got \"" + std::string(name) + "\"");
}

}  // namespace vaes
