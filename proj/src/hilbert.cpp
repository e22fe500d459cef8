// Copyright 2026 The qdctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdc/hilbert.hpp"

#include <algorithm>

#include "qdc/errors.hpp"

namespace qdc {
namespace {

double scale_of(const Eigen::MatrixXcd& m) {
  return std::max(1.0, m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff());
}

void require_precedes(LevelIndex a, LevelIndex b, int levels) {
  if (flatten(a, levels) >= flatten(b, levels)) {
    throw IndexError("generator labels must satisfy " + to_string(a) + " < " + to_string(b));
  }
}

}  // namespace

int basis_dimension(int levels) {
  if (levels < 2) {
    throw InvalidSpecError("need at least 2 levels, got " + std::to_string(levels));
  }
  return 2 * levels - 1;
}

int flatten(LevelIndex index, int levels) {
  if (index.n < 1 || index.n > levels || index.k < 1 || index.k > degeneracy(index.n)) {
    throw IndexError("level label " + to_string(index) + " out of range for N=" +
                     std::to_string(levels));
  }
  return index.n == 1 ? 0 : 2 * (index.n - 2) + index.k;
}

LevelIndex unflatten(int position, int levels) {
  if (position < 0 || position >= 2 * levels - 1) {
    throw IndexError("basis position " + std::to_string(position) + " out of range");
  }
  if (position == 0) return {1, 1};
  return {(position - 1) / 2 + 2, (position - 1) % 2 + 1};
}

std::string to_string(LevelIndex index) {
  return "(" + std::to_string(index.n) + "," + std::to_string(index.k) + ")";
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance * scale_of(m);
}

bool is_skew_hermitian(const Eigen::MatrixXcd& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tolerance * scale_of(m);
}

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd entries, OperatorKind kind)
    : entries_(std::move(entries)), kind_(kind) {
  if (entries_.rows() != entries_.cols()) {
    throw ShapeError("operator matrix must be square");
  }
  if (kind_ == OperatorKind::hermitian && !is_hermitian(entries_)) {
    throw ContractError("matrix flagged hermitian is not Hermitian");
  }
  if (kind_ == OperatorKind::skew_hermitian && !is_skew_hermitian(entries_)) {
    throw ContractError("matrix flagged skew_hermitian is not skew-Hermitian");
  }
}

OperatorMatrix OperatorMatrix::zero(int dim, OperatorKind kind) {
  return {Eigen::MatrixXcd::Zero(dim, dim), kind};
}

OperatorMatrix OperatorMatrix::scaled(Complex factor) const {
  OperatorKind kind = OperatorKind::general;
  const bool real = factor.imag() == 0.0;
  const bool imaginary = factor.real() == 0.0;
  if (kind_ != OperatorKind::general) {
    if (real) {
      kind = kind_;
    } else if (imaginary) {
      kind = kind_ == OperatorKind::hermitian ? OperatorKind::skew_hermitian
                                              : OperatorKind::hermitian;
    }
  }
  return {entries_ * factor, kind};
}

OperatorMatrix make_x(LevelIndex a, LevelIndex b, int levels) {
  require_precedes(a, b, levels);
  const int d = basis_dimension(levels);
  const int i = flatten(a, levels);
  const int j = flatten(b, levels);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(i, j) = Complex(0, 1);
  m(j, i) = Complex(0, 1);
  return {std::move(m), OperatorKind::skew_hermitian};
}

OperatorMatrix make_y(LevelIndex a, LevelIndex b, int levels) {
  require_precedes(a, b, levels);
  const int d = basis_dimension(levels);
  const int i = flatten(a, levels);
  const int j = flatten(b, levels);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(i, j) = 1.0;
  m(j, i) = -1.0;
  return {std::move(m), OperatorKind::skew_hermitian};
}

OperatorMatrix make_h(LevelIndex a, LevelIndex b, int levels) {
  require_precedes(a, b, levels);
  const int d = basis_dimension(levels);
  const int i = flatten(a, levels);
  const int j = flatten(b, levels);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(i, i) = Complex(0, 1);
  m(j, j) = Complex(0, -1);
  return {std::move(m), OperatorKind::skew_hermitian};
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ShapeError("commutator of " + std::to_string(a.dim()) + "x" + std::to_string(a.dim()) +
                     " and " + std::to_string(b.dim()) + "x" + std::to_string(b.dim()));
  }
  Eigen::MatrixXcd c = a.entries() * b.entries() - b.entries() * a.entries();
  OperatorKind kind = OperatorKind::general;
  if (a.kind() != OperatorKind::general && b.kind() != OperatorKind::general) {
    kind = a.kind() == b.kind() ? OperatorKind::skew_hermitian : OperatorKind::hermitian;
  }
  return {std::move(c), kind};
}

double frobenius_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("inner product of differently shaped matrices");
  }
  return (a.conjugate().cwiseProduct(b)).real().sum();
}

double frobenius_inner(const OperatorMatrix& a, const OperatorMatrix& b) {
  return frobenius_inner(a.entries(), b.entries());
}

}  // namespace qdc
