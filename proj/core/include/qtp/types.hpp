// Copyright 2026 The qtp Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qtp {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// One value per grid sample.
using ScalarSeries = std::vector<double>;

// Time-indexed dense matrices in one contiguous buffer. Sample i is a
// column-major rows x cols block; vectors are stored with cols == 1.
template <typename Scalar>
class SampledMatrix {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  SampledMatrix() = default;
  SampledMatrix(std::size_t samples, Eigen::Index rows, Eigen::Index cols = 1)
      : samples_(samples), rows_(rows), cols_(cols),
        data_(samples * static_cast<std::size_t>(rows * cols), Scalar(0)) {}

  std::size_t samples() const { return samples_; }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  std::size_t stride() const { return static_cast<std::size_t>(rows_ * cols_); }
  bool empty() const { return samples_ == 0; }

  Eigen::Map<Matrix> operator[](std::size_t i) {
    return Eigen::Map<Matrix>(data_.data() + i * stride(), rows_, cols_);
  }
  Eigen::Map<const Matrix> operator[](std::size_t i) const {
    return Eigen::Map<const Matrix>(data_.data() + i * stride(), rows_, cols_);
  }

  // Sample i of a vector series (cols == 1).
  Eigen::Map<Vector> vec(std::size_t i) { return Eigen::Map<Vector>(data_.data() + i * stride(), rows_); }
  Eigen::Map<const Vector> vec(std::size_t i) const {
    return Eigen::Map<const Vector>(data_.data() + i * stride(), rows_);
  }

  Scalar& operator()(std::size_t i, Eigen::Index r, Eigen::Index c = 0) {
    return data_[i * stride() + static_cast<std::size_t>(c * rows_ + r)];
  }
  Scalar operator()(std::size_t i, Eigen::Index r, Eigen::Index c = 0) const {
    return data_[i * stride() + static_cast<std::size_t>(c * rows_ + r)];
  }

  // Time series of a single element.
  std::vector<Scalar> channel(Eigen::Index r, Eigen::Index c = 0) const {
    std::vector<Scalar> out(samples_);
    for (std::size_t i = 0; i < samples_; ++i) out[i] = (*this)(i, r, c);
    return out;
  }

  std::span<Scalar> flat() { return data_; }
  std::span<const Scalar> flat() const { return data_; }

 private:
  std::size_t samples_ = 0;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  std::vector<Scalar> data_;
};

using ComplexMatrixSeries = SampledMatrix<cplx>;
using RealMatrixSeries = SampledMatrix<double>;

}  // namespace qtp
