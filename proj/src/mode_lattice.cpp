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

#include "qfp/mode_lattice.hpp"

#include <cmath>
#include <string>

#include "qfp/error.hpp"

namespace qfp {

ModeWindow::ModeWindow(int n_min, int n_max, double spacing_hz)
    : n_min_(n_min), n_max_(n_max), spacing_(spacing_hz) {
  if (n_min > n_max) {
    throw ValidationError("mode window: n_min (" + std::to_string(n_min) +
                          ") exceeds n_max (" + std::to_string(n_max) + ")");
  }
}

ModeWindow ModeWindow::symmetric(int half_width) {
  if (half_width < 0) throw ValidationError("mode window: negative half width");
  return ModeWindow(-half_width, half_width);
}

Eigen::Index ModeWindow::index_of(int bin) const {
  if (!contains(bin)) {
    throw IndexError("bin " + std::to_string(bin) + " outside window [" +
                     std::to_string(n_min_) + ", " + std::to_string(n_max_) + "]");
  }
  return static_cast<Eigen::Index>(bin - n_min_);
}

ModeWindow ModeWindow::expanded(int margin) const {
  return ModeWindow(n_min_ - margin, n_max_ + margin, spacing_);
}

int truncation_margin(double depth) {
  return static_cast<int>(std::ceil(std::abs(depth))) + 15;
}

TransferMatrix::TransferMatrix(ModeWindow window_in, ModeWindow window_out,
                               ComplexMatrix entries)
    : window_in_(window_in), window_out_(window_out), entries_(std::move(entries)) {
  if (static_cast<std::size_t>(entries_.rows()) != window_out_.size() ||
      static_cast<std::size_t>(entries_.cols()) != window_in_.size()) {
    throw DimensionError("transfer matrix: entries are " + std::to_string(entries_.rows()) +
                         "x" + std::to_string(entries_.cols()) + " but windows need " +
                         std::to_string(window_out_.size()) + "x" +
                         std::to_string(window_in_.size()));
  }
}

TransferMatrix TransferMatrix::identity(const ModeWindow& window) {
  const auto n = static_cast<Eigen::Index>(window.size());
  return TransferMatrix(window, window, ComplexMatrix::Identity(n, n));
}

Complex TransferMatrix::operator()(int out_bin, int in_bin) const {
  return entries_(window_out_.index_of(out_bin), window_in_.index_of(in_bin));
}

ComplexMatrix TransferMatrix::block(const ModeWindow& out_bins,
                                    const ModeWindow& in_bins) const {
  const auto r0 = window_out_.index_of(out_bins.n_min());
  window_out_.index_of(out_bins.n_max());
  const auto c0 = window_in_.index_of(in_bins.n_min());
  window_in_.index_of(in_bins.n_max());
  return entries_.block(r0, c0, static_cast<Eigen::Index>(out_bins.size()),
                        static_cast<Eigen::Index>(in_bins.size()));
}

TransferMatrix compose(const TransferMatrix& first, const TransferMatrix& second) {
  if (!(second.window_in() == first.window_out())) {
    throw DimensionError("compose: second.window_in does not match first.window_out");
  }
  return TransferMatrix(first.window_in(), second.window_out(),
                        second.entries() * first.entries());
}

namespace {

double defect_of_columns(const ComplexMatrix& cols) {
  const ComplexMatrix gram = cols.adjoint() * cols;
  const auto n = gram.rows();
  return (gram - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

double unitarity_defect(const TransferMatrix& v) {
  if (!v.is_square()) throw DimensionError("unitarity_defect: matrix is not square");
  return defect_of_columns(v.entries());
}

double unitarity_defect(const TransferMatrix& v, const ModeWindow& sub) {
  if (!v.is_square()) throw DimensionError("unitarity_defect: matrix is not square");
  const auto c0 = v.window_in().index_of(sub.n_min());
  v.window_in().index_of(sub.n_max());
  return defect_of_columns(
      v.entries().middleCols(c0, static_cast<Eigen::Index>(sub.size())));
}

double column_norm2(const TransferMatrix& v, int in_bin) {
  return v.entries().col(v.window_in().index_of(in_bin)).squaredNorm();
}

}  // namespace qfp
