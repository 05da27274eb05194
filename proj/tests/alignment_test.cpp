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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"
#include "vaes/alignment.hpp"

namespace vaes {
namespace {

using testing::Rng;
using P = PrefScore;

Eigen::MatrixXi random_antisymmetric(Rng& rng, Eigen::Index g) {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(g, g);
  std::uniform_int_distribution<int> s(-1, 1);
  for (Eigen::Index a = 0; a < g; ++a) {
    for (Eigen::Index b = a + 1; b < g; ++b) {
      m(a, b) = s(rng);
      m(b, a) = -m(a, b);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// RWR weights

TEST(RwrWeight, FromScore) {
  EXPECT_EQ(rwr_weight_from_score(0.0), 1.0);
  EXPECT_NEAR(rwr_weight_from_score(3.0), 0.049787068367863944, 1e-9);
  EXPECT_NEAR(rwr_weight_from_score(-3.0), 20.085536923187668, 1e-9);
  for (double s = -10.0; s < 10.0; s += 0.25) {
    EXPECT_GT(rwr_weight_from_score(s), rwr_weight_from_score(s + 0.25));
  }
}

TEST(RwrWeight, ClampCapsLargeWeights) {
  EXPECT_EQ(rwr_weight_from_score(-40.0, true), kMaxRwrWeight);
  EXPECT_GT(rwr_weight_from_score(-40.0), kMaxRwrWeight);
  EXPECT_EQ(rwr_weight_from_score(-1.0, true), rwr_weight_from_score(-1.0));
  EXPECT_NEAR(kMaxRwrWeight, 3269017.3724721107, 1e-6);
}

TEST(RwrWeight, FromCriteria) {
  std::vector<P> s(15, P::kTie);
  EXPECT_EQ(rwr_weight_from_criteria(s), 1.0);
  s[0] = s[4] = s[9] = P::kABetter;
  EXPECT_NEAR(rwr_weight_from_criteria(s), 20.085536923187668, 1e-9);
  std::vector<P> neg(15, P::kTie);
  neg[2] = neg[12] = P::kBBetter;
  EXPECT_NEAR(rwr_weight_from_criteria(neg), 0.1353352832366127, 1e-9);
  try {
    rwr_weight_from_criteria(std::vector<P>(14, P::kTie));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadCriteriaCount);
  }
  EXPECT_EQ(rwr_weight_from_criteria(std::vector<P>(15, P::kABetter), true), kMaxRwrWeight);
}

TEST(RwrWeight, NegatedCriteriaGiveReciprocal) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<P> s(15);
    for (P& x : s) x = testing::random_score(rng);
    std::vector<P> n(15);
    std::transform(s.begin(), s.end(), n.begin(), [](P x) { return negate(x); });
    EXPECT_NEAR(rwr_weight_from_criteria(n) * rwr_weight_from_criteria(s), 1.0, 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Pairwise matrices and win rates

TEST(PairwiseMatrix, Validation) {
  EXPECT_THROW(PairwiseMatrix(Eigen::MatrixXi::Zero(1, 1)), Error);
  EXPECT_THROW(PairwiseMatrix(Eigen::MatrixXi::Zero(2, 3)), Error);
  Eigen::MatrixXi m(2, 2);
  m << 0, 2, -2, 0;
  EXPECT_THROW(PairwiseMatrix{m}, Error);
  m << 0, 1, 1, 0;
  try {
    PairwiseMatrix{m};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAntisymmetric);
  }
  m << 1, 0, 0, 0;
  EXPECT_THROW(PairwiseMatrix{m}, Error);
}

TEST(PairwiseMatrix, FromBidirectionalScores) {
  Eigen::MatrixXd s(3, 3);
  // Row a, column b: score for a over b with a shown first.
  s << 0, 2, -1,
      -1, 0, 0.5,
       1, 0.5, 0;
  const PairwiseMatrix m = PairwiseMatrix::from_bidirectional(s);
  EXPECT_EQ(m.at(0, 1), P::kABetter);   // (2 - -1) / 2 > 0
  EXPECT_EQ(m.at(1, 0), P::kBBetter);
  EXPECT_EQ(m.at(0, 2), P::kBBetter);   // (-1 - 1) / 2 < 0
  EXPECT_EQ(m.at(1, 2), P::kTie);       // (0.5 - 0.5) / 2 = 0
  EXPECT_EQ(m.matrix().diagonal(), Eigen::VectorXi::Zero(3));
}

TEST(WinRates, Examples) {
  Eigen::MatrixXi two(2, 2);
  two << 0, 1, -1, 0;
  EXPECT_EQ(win_rates(PairwiseMatrix(two)), Eigen::Vector2d(1.0, 0.0));
  const Eigen::VectorXd ties = win_rates(PairwiseMatrix(Eigen::MatrixXi::Zero(4, 4)));
  EXPECT_TRUE((ties.array() == 0.5).all());
  Eigen::MatrixXi cycle(3, 3);
  cycle << 0, 1, -1,
          -1, 0, 1,
           1, -1, 0;
  EXPECT_TRUE((win_rates(PairwiseMatrix(cycle)).array() == 0.5).all());
}

TEST(WinRates, SumToHalfTheGroup) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index g = 2 + trial % 9;
    const Eigen::VectorXd w = win_rates(PairwiseMatrix(random_antisymmetric(rng, g)));
    EXPECT_NEAR(w.sum(), static_cast<double>(g) / 2.0, 1e-12);
    EXPECT_TRUE((w.array() >= 0.0).all() && (w.array() <= 1.0).all());
  }
}

// ---------------------------------------------------------------------------
// Group advantages

TEST(GroupAdvantages, Examples) {
  const Eigen::VectorXd a = group_advantages(Eigen::Vector4d(1, 0, 1, 0));
  EXPECT_TRUE(a.isApprox(Eigen::Vector4d(1, -1, 1, -1), 1e-12));
  EXPECT_EQ(group_advantages(Eigen::Vector3d(0.7, 0.7, 0.7)), Eigen::Vector3d::Zero());
  const std::vector<double> two = {2.0, 0.0};
  EXPECT_TRUE(group_advantages(two).isApprox(Eigen::Vector2d(1, -1), 1e-12));
  // Bessel-corrected: std of (1,0,1,0) is sqrt(1/3).
  const Eigen::VectorXd s = group_advantages(Eigen::Vector4d(1, 0, 1, 0), StdMode::kSample);
  EXPECT_NEAR(s(0), 0.5 * std::sqrt(3.0), 1e-12);
}

TEST(GroupAdvantages, Errors) {
  try {
    group_advantages(Eigen::VectorXd::Ones(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadGroup);
  }
  EXPECT_THROW(group_advantages(Eigen::Vector2d(1, std::nan(""))), Error);
  EXPECT_EQ(std_mode_from_name("sample"), StdMode::kSample);
  EXPECT_EQ(std_mode_name(StdMode::kPopulation), "population");
  EXPECT_THROW(std_mode_from_name("bessel"), Error);
}

TEST(GroupAdvantages, ZeroMeanUnitStd) {
  Rng rng(3);
  std::normal_distribution<double> n(2.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd r(2 + trial % 15);
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = n(rng);
    const Eigen::VectorXd a = group_advantages(r);
    EXPECT_NEAR(a.mean(), 0.0, 1e-9);
    EXPECT_NEAR(std::sqrt(a.squaredNorm() / static_cast<double>(a.size())), 1.0, 1e-9);
  }
}

TEST(GroupAdvantages, FloatInputsKeepTheirScalar) {
  const Eigen::VectorXf a = group_advantages(Eigen::Vector4f(1, 0, 1, 0));
  EXPECT_NEAR(a(1), -1.0f, 1e-6f);
}

TEST(GroupAdvantages, WinRateAdvantagesArePermutationEquivariant) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index g = 2 + trial % 7;
    const Eigen::MatrixXi m = random_antisymmetric(rng, g);
    std::vector<int> perm(static_cast<std::size_t>(g));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXi pm(g, g);
    for (Eigen::Index a = 0; a < g; ++a) {
      for (Eigen::Index b = 0; b < g; ++b) {
        pm(a, b) = m(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
      }
    }
    const Eigen::VectorXd adv = group_advantages(win_rates(PairwiseMatrix(m)));
    const Eigen::VectorXd padv = group_advantages(win_rates(PairwiseMatrix(pm)));
    for (Eigen::Index a = 0; a < g; ++a) {
      EXPECT_NEAR(padv(a), adv(perm[static_cast<std::size_t>(a)]), 1e-12);
    }
  }
}

}  // namespace
}  // namespace vaes
