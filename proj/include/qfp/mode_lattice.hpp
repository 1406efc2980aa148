// Copyright 2026 The QFP Authors
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

#include <Eigen/Dense>

namespace qfp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Contiguous, inclusive range of comb bins n_min..n_max centred at
/// w_n = w_0 + n * spacing.
class ModeWindow {
 public:
  ModeWindow(int n_min, int n_max, double spacing_hz = 25e9);

  /// Symmetric window [-half_width, half_width].
  static ModeWindow symmetric(int half_width);

  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return static_cast<std::size_t>(n_max_ - n_min_ + 1); }

  bool contains(int bin) const { return bin >= n_min_ && bin <= n_max_; }
  bool contains(const ModeWindow& other) const {
    return other.n_min_ >= n_min_ && other.n_max_ <= n_max_;
  }

  /// Row/column offset of a bin. Throws IndexError when the bin is outside.
  Eigen::Index index_of(int bin) const;
  int bin_at(Eigen::Index index) const { return n_min_ + static_cast<int>(index); }

  /// Window grown by `margin` bins on each side.
  ModeWindow expanded(int margin) const;

  // Spacing is metadata and does not take part in equality.
  friend bool operator==(const ModeWindow& a, const ModeWindow& b) {
    return a.n_min_ == b.n_min_ && a.n_max_ == b.n_max_;
  }

 private:
  int n_min_;
  int n_max_;
  double spacing_;
};

/// Sidebands to keep beyond the outermost populated bin for a modulation
/// depth: ceil(depth) + 15.
int truncation_margin(double depth);

/// Mode-coupling matrix, b_m = sum_n V_{mn} a_n, with rows indexed by
/// window_out and columns by window_in.
class TransferMatrix {
 public:
  TransferMatrix(ModeWindow window_in, ModeWindow window_out, ComplexMatrix entries);

  static TransferMatrix identity(const ModeWindow& window);

  const ModeWindow& window_in() const { return window_in_; }
  const ModeWindow& window_out() const { return window_out_; }
  const ComplexMatrix& entries() const { return entries_; }

  /// V_{out_bin, in_bin}.
  Complex operator()(int out_bin, int in_bin) const;

  /// Sub-matrix on the given output and input bins.
  ComplexMatrix block(const ModeWindow& out_bins, const ModeWindow& in_bins) const;

  bool is_square() const { return window_in_ == window_out_; }

 private:
  ModeWindow window_in_;
  ModeWindow window_out_;
  ComplexMatrix entries_;
};

/// second * first: apply `first`, then `second`.
TransferMatrix compose(const TransferMatrix& first, const TransferMatrix& second);

/// max |(V^dag V - I)_{ij}|.
double unitarity_defect(const TransferMatrix& v);

/// Same defect restricted to the columns/rows of `sub` (the central block of
/// a larger computation).
double unitarity_defect(const TransferMatrix& v, const ModeWindow& sub);

/// Squared norm of the column for `in_bin`.
double column_norm2(const TransferMatrix& v, int in_bin);

inline constexpr double kSubUnitarityEps = 1e-9;

}  // namespace qfp
