// Copyright 2026 The isingsim developers
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

#include "isingsim/su.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace isingsim {

namespace {

const Complex kImag{0.0, 1.0};

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kImag, kImag, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void require_dim_2_or_4(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || (m.rows() != 2 && m.rows() != 4)) {
    throw std::invalid_argument(std::string(what) +
                                ": dimension must be 2 or 4");
  }
}

}  // namespace

std::string to_string(ProductOperator op) {
  switch (op) {
    case ProductOperator::Ix:
      return "Ix";
    case ProductOperator::Iy:
      return "Iy";
    case ProductOperator::Iz:
      return "Iz";
    case ProductOperator::Sx:
      return "Sx";
    case ProductOperator::Sy:
      return "Sy";
    case ProductOperator::Sz:
      return "Sz";
    case ProductOperator::TwoIzSz:
      return "2IzSz";
    case ProductOperator::TwoIzSx:
      return "2IzSx";
  }
  throw std::invalid_argument("unknown product operator label");
}

Generator::Generator(Matrix m) : mat_(std::move(m)) {
  require_dim_2_or_4(mat_, "Generator");
  if (max_abs(mat_ - mat_.adjoint().eval()) > kHermiticityTol) {
    throw std::invalid_argument("Generator: matrix is not Hermitian");
  }
}

bool Generator::squares_to_quarter_identity(double tol) const {
  const Matrix sq = mat_ * mat_;
  const Matrix quarter = 0.25 * Matrix::Identity(dim(), dim());
  return max_abs(sq - quarter) <= tol;
}

UnitaryMatrix::UnitaryMatrix(Matrix m) : mat_(std::move(m)) {
  require_dim_2_or_4(mat_, "UnitaryMatrix");
  if (unitarity_error() > kUnitarityTol) {
    throw std::invalid_argument("UnitaryMatrix: matrix is not unitary");
  }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  return UnitaryMatrix(Matrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(mat_.adjoint());
}

double UnitaryMatrix::unitarity_error() const {
  const Matrix gram = mat_.adjoint() * mat_;
  return max_abs(gram - Matrix::Identity(mat_.rows(), mat_.cols()));
}

UnitaryMatrix operator*(const UnitaryMatrix& lhs, const UnitaryMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw std::invalid_argument("UnitaryMatrix product: dimension mismatch");
  }
  return UnitaryMatrix(lhs.mat_ * rhs.mat_);
}

Generator product_operator(ProductOperator op, int dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("product_operator: dim must be 2 or 4");
  }
  const Matrix id2 = Matrix::Identity(2, 2);

  auto single_spin = [&](const Matrix& pauli, bool on_spin_i) -> Matrix {
    if (dim == 2) {
      if (!on_spin_i) {
        throw std::invalid_argument(
            "product_operator: S operators need dim 4");
      }
      return 0.5 * pauli;
    }
    return on_spin_i ? kroneckerProduct(0.5 * pauli, id2).eval()
                     : kroneckerProduct(id2, 0.5 * pauli).eval();
  };

  switch (op) {
    case ProductOperator::Ix:
      return Generator(single_spin(pauli_x(), true));
    case ProductOperator::Iy:
      return Generator(single_spin(pauli_y(), true));
    case ProductOperator::Iz:
      return Generator(single_spin(pauli_z(), true));
    case ProductOperator::Sx:
      return Generator(single_spin(pauli_x(), false));
    case ProductOperator::Sy:
      return Generator(single_spin(pauli_y(), false));
    case ProductOperator::Sz:
      return Generator(single_spin(pauli_z(), false));
    case ProductOperator::TwoIzSz:
      if (dim != 4) {
        throw std::invalid_argument(
            "product_operator: bilinear operators need dim 4");
      }
      return Generator(0.5 * kroneckerProduct(pauli_z(), pauli_z()).eval());
    case ProductOperator::TwoIzSx:
      if (dim != 4) {
        throw std::invalid_argument(
            "product_operator: bilinear operators need dim 4");
      }
      return Generator(0.5 * kroneckerProduct(pauli_z(), pauli_x()).eval());
  }
  throw std::invalid_argument("product_operator: unknown label");
}

UnitaryMatrix expm_rotation(const Generator& g, double theta) {
  if (!g.squares_to_quarter_identity()) {
    throw std::domain_error(
        "expm_rotation: generator does not satisfy G*G = I/4; use "
        "expm_generic");
  }
  const int d = g.dim();
  const Matrix u = std::cos(theta / 2) * Matrix::Identity(d, d) -
                   2.0 * kImag * std::sin(theta / 2) * g.matrix();
  return UnitaryMatrix(u);
}

UnitaryMatrix expm_generic(const Generator& g, double theta) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(g.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("expm_generic: eigendecomposition failed");
  }
  const auto& values = solver.eigenvalues();
  const Matrix& vectors = solver.eigenvectors();
  Eigen::VectorXcd phases(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    phases[k] = std::exp(-kImag * theta * values[k]);
  }
  return UnitaryMatrix(vectors * phases.asDiagonal() * vectors.adjoint());
}

double fidelity(const UnitaryMatrix& implemented, const UnitaryMatrix& ideal) {
  if (implemented.dim() != ideal.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const Complex overlap =
      (implemented.matrix() * ideal.matrix().adjoint()).trace();
  return std::abs(overlap) / static_cast<double>(ideal.dim());
}

bool equal_up_to_global_phase(const UnitaryMatrix& a, const UnitaryMatrix& b,
                              double tol) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
  }
  // Align phases at the largest-magnitude entry of B.  A unitary always has
  // an entry of magnitude >= 1/sqrt(dim), so the reference is well separated
  // from zero.
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  b.matrix().cwiseAbs().maxCoeff(&row, &col);
  const Complex a_ref = a.matrix()(row, col);
  const Complex b_ref = b.matrix()(row, col);
  Complex phase{1.0, 0.0};
  if (std::abs(a_ref) > 0.0) {
    phase = (b_ref / a_ref) / std::abs(b_ref / a_ref);
  }
  const Matrix diff = phase * a.matrix() - b.matrix();
  return diff.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace isingsim
