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

#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

/// Exact complex linear algebra for two-level and two-spin (4x4) unitaries:
/// spin product operators, closed-form and eigendecomposition matrix
/// exponentials, propagator fidelity, and global-phase-insensitive comparison.
///
/// Conventions used throughout:
///  - computational basis |00>, |01>, |10>, |11>, spin I is the left tensor
///    factor and spin S the right one;
///  - product-operator normalization: single-spin operators are Pauli
///    matrices divided by 2, the bilinear 2IzSz is (sigma_z x sigma_z)/2;
///  - a rotation by angle theta about generator G is exp(-i theta G).
namespace isingsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Construction-level unitarity bound: ||U'U - I||_max for every matrix
/// produced by this module.
inline constexpr double kUnitarityTol = 1e-12;
/// Hermiticity bound for generators.
inline constexpr double kHermiticityTol = 1e-14;
/// Default tolerance for gate-equivalence checks (up to global phase).
inline constexpr double kGateEquivalenceTol = 1e-10;

/// The named spin product operators.  Single-spin labels exist at dimension 2
/// (one spin) and dimension 4 (embedded by tensoring with the identity on the
/// other spin); the bilinear labels exist only at dimension 4.
enum class ProductOperator {
  Ix,
  Iy,
  Iz,
  Sx,
  Sy,
  Sz,
  TwoIzSz,
  TwoIzSx,
};

std::string to_string(ProductOperator op);

/// A Hermitian rotation generator of dimension 2 or 4.
///
/// Entries are in product-operator normalization, so every named operator G
/// satisfies G*G = I/4 exactly, which licenses the closed-form exponential in
/// expm_rotation().  Construction rejects non-Hermitian input (tolerance
/// kHermiticityTol) and dimensions other than 2 or 4.
class Generator {
 public:
  explicit Generator(Matrix m);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

  /// True iff G*G = I/4 within `tol` in max norm.  Holds for all named
  /// product operators and for unit-norm in-plane/tilted combinations of two
  /// anticommuting ones.
  bool squares_to_quarter_identity(double tol = kHermiticityTol) const;

 private:
  Matrix mat_;
};

/// A value-semantic unitary of dimension 2 or 4.  Construction validates
/// ||U'U - I||_max <= kUnitarityTol, so holding a UnitaryMatrix certifies
/// unitarity at that level.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix m);

  static UnitaryMatrix identity(int dim);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }
  UnitaryMatrix adjoint() const;

  /// ||U'U - I||_max, for diagnostics and tests.
  double unitarity_error() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& lhs,
                                 const UnitaryMatrix& rhs);

 private:
  Matrix mat_;
};

/// Returns the named product operator at the requested dimension.
/// Throws std::invalid_argument for an inconsistent dim/label pairing
/// (S* or bilinear labels need dim 4; dim must be 2 or 4).
Generator product_operator(ProductOperator op, int dim);

/// exp(-i theta G) via the closed form cos(theta/2) I - 2i sin(theta/2) G,
/// valid exactly when G*G = I/4.  Throws std::domain_error if the generator
/// fails that precondition (use expm_generic instead).
UnitaryMatrix expm_rotation(const Generator& g, double theta);

/// exp(-i theta G) by eigendecomposition of the Hermitian generator:
/// U = V diag(exp(-i theta lambda_k)) V'.  Independent of the closed form;
/// serves as its oracle.
UnitaryMatrix expm_generic(const Generator& g, double theta);

/// Propagator fidelity |Tr(V U')| / dim, insensitive to a global phase on
/// either argument.  Throws std::invalid_argument on dimension mismatch.
double fidelity(const UnitaryMatrix& implemented, const UnitaryMatrix& ideal);

/// True iff min over alpha of ||e^{i alpha} A - B||_max <= tol, evaluated by
/// aligning phases at the largest-magnitude entry of B.
bool equal_up_to_global_phase(const UnitaryMatrix& a, const UnitaryMatrix& b,
                              double tol = kGateEquivalenceTol);

}  // namespace isingsim
