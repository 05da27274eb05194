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

// Vector and text similarity primitives: cosine, mean vector, ROUGE-L.

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "vaes/error.hpp"

namespace vaes {

using Embedding = Eigen::VectorXd;

template <typename Scalar>
using EmbeddingT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Cosine similarity of two equally sized vectors, clamped to [-1, 1].
/// Throws Error(kDimMismatch) on a size mismatch and Error(kZeroNorm) when
/// either vector has zero norm.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine(const Eigen::MatrixBase<DerivedA>& a,
                                 const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimMismatch,
                "cosine of vectors with sizes " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
  }
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) {
    throw Error(ErrorCode::kZeroNorm, "cosine of a zero-norm vector");
  }
  return std::clamp<Scalar>(a.dot(b) / (na * nb), Scalar(-1), Scalar(1));
}

/// Coordinate-wise mean. Throws Error(kEmptyPool) on an empty input and
/// Error(kDimMismatch) when sizes differ.
template <typename Scalar>
EmbeddingT<Scalar> mean_vector(std::span<const EmbeddingT<Scalar>> vs) {
  if (vs.empty()) throw Error(ErrorCode::kEmptyPool, "mean of an empty pool");
  EmbeddingT<Scalar> sum = EmbeddingT<Scalar>::Zero(vs.front().size());
  for (const auto& v : vs) {
    if (v.size() != sum.size()) {
      throw Error(ErrorCode::kDimMismatch, "mean of vectors with differing sizes");
    }
    sum += v;
  }
  return sum / static_cast<Scalar>(vs.size());
}

inline Embedding mean_vector(const std::vector<Embedding>& vs) {
  return mean_vector<double>(std::span<const Embedding>(vs));
}

// Lower-cased tokens split on ASCII whitespace and punctuation. Bytes >= 0x80
// count as word characters so UTF-8 sequences stay inside their token.
std::vector<std::string> tokenize(std::string_view text);

std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b);

// Balanced ROUGE-L F-measure over token sequences. Two empty sequences score
// 1; an empty sequence against a nonempty one scores 0.
double rouge_l_tokens(std::span<const std::string> candidate,
                      std::span<const std::string> reference);

double rouge_l(std::string_view candidate, std::string_view reference);

}  // namespace vaes
