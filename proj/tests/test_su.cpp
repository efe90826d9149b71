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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isingsim/su.hpp"
#include "test_helpers.hpp"

using namespace isingsim;
using isingsim::testing::max_abs_diff;
using isingsim::testing::named_generators;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kImag{0.0, 1.0};
}  // namespace

TEST_CASE("named product operators have the defining matrices") {
  const Generator iz = product_operator(ProductOperator::Iz, 2);
  Matrix expected_iz(2, 2);
  expected_iz << 0.5, 0, 0, -0.5;
  CHECK(max_abs_diff(iz.matrix(), expected_iz) == 0.0);

  const Generator zz = product_operator(ProductOperator::TwoIzSz, 4);
  Matrix expected_zz = Matrix::Zero(4, 4);
  expected_zz(0, 0) = 0.5;
  expected_zz(1, 1) = -0.5;
  expected_zz(2, 2) = -0.5;
  expected_zz(3, 3) = 0.5;
  CHECK(max_abs_diff(zz.matrix(), expected_zz) == 0.0);

  // 2IzSx squares to I/4 (direct multiplication).
  const Generator zx = product_operator(ProductOperator::TwoIzSx, 4);
  CHECK(zx.squares_to_quarter_identity());
}

TEST_CASE("all named generators are Hermitian and square to I/4") {
  for (const auto& g : named_generators()) {
    CHECK(max_abs_diff(g.matrix(), g.matrix().adjoint().eval()) <=
          kHermiticityTol);
    CHECK(g.squares_to_quarter_identity());
  }
}

TEST_CASE("product operator rejects bad label/dim pairings") {
  CHECK_THROWS_AS(product_operator(ProductOperator::Sx, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(product_operator(ProductOperator::TwoIzSz, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(product_operator(ProductOperator::Ix, 3),
                  std::invalid_argument);
}

TEST_CASE("generator construction rejects non-Hermitian input") {
  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(Generator{bad}, std::invalid_argument);
}

TEST_CASE("expm_rotation closed form on the diagonal generator") {
  const Generator iz = product_operator(ProductOperator::Iz, 2);
  const UnitaryMatrix u = expm_rotation(iz, kPi);
  Matrix expected(2, 2);
  expected << -kImag, 0, 0, kImag;
  CHECK(max_abs_diff(u.matrix(), expected) <= 1e-15);

  const UnitaryMatrix id = expm_rotation(iz, 0.0);
  CHECK(max_abs_diff(id.matrix(), Matrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("expm_rotation rejects generators without G*G = I/4") {
  Matrix skewed(2, 2);
  skewed << 1, 0, 0, 2;
  const Generator g{skewed};
  CHECK_THROWS_AS(expm_rotation(g, 1.0), std::domain_error);
  // The generic route still handles it.
  const UnitaryMatrix u = expm_generic(g, 0.3);
  CHECK(std::abs(u.matrix()(0, 0) - std::exp(-kImag * 0.3)) <= 1e-14);
  CHECK(std::abs(u.matrix()(1, 1) - std::exp(-kImag * 0.6)) <= 1e-14);
}

TEST_CASE("expm_generic diagonal cases done by hand") {
  Matrix half(2, 2);
  half << 0.5, 0, 0, -0.5;
  const UnitaryMatrix u2 = expm_generic(Generator{half}, kPi / 2);
  CHECK(std::abs(u2.matrix()(0, 0) - std::exp(-kImag * kPi / 4.0)) <= 1e-14);
  CHECK(std::abs(u2.matrix()(1, 1) - std::exp(kImag * kPi / 4.0)) <= 1e-14);

  const UnitaryMatrix u4 =
      expm_generic(product_operator(ProductOperator::TwoIzSz, 4), kPi / 2);
  const Complex minus = std::exp(-kImag * kPi / 4.0);
  const Complex plus = std::exp(kImag * kPi / 4.0);
  CHECK(std::abs(u4.matrix()(0, 0) - minus) <= 1e-14);
  CHECK(std::abs(u4.matrix()(1, 1) - plus) <= 1e-14);
  CHECK(std::abs(u4.matrix()(2, 2) - plus) <= 1e-14);
  CHECK(std::abs(u4.matrix()(3, 3) - minus) <= 1e-14);

  CHECK(max_abs_diff(expm_generic(Generator{half}, 0.0).matrix(),
                     Matrix::Identity(2, 2)) <= 1e-15);
}

TEST_CASE("closed-form and eigendecomposition exponentials agree") {
  std::mt19937_64 rng(20260810);
  std::uniform_real_distribution<double> angle(-4 * kPi, 4 * kPi);
  const auto gens = named_generators();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int i = 0; i < 100; ++i) {
    const Generator& g = gens[pick(rng)];
    const double theta = angle(rng);
    const UnitaryMatrix closed = expm_rotation(g, theta);
    const UnitaryMatrix generic = expm_generic(g, theta);
    CHECK(max_abs_diff(closed, generic) <= 1e-12);
    CHECK(closed.unitarity_error() <= kUnitarityTol);
    CHECK(generic.unitarity_error() <= kUnitarityTol);
  }
}

TEST_CASE("fidelity basics and the naive-error closed form") {
  const Generator ix = product_operator(ProductOperator::Ix, 2);
  const UnitaryMatrix u = expm_rotation(ix, kPi / 2);
  CHECK(fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-14));

  // Global phase on either side is irrelevant.
  const UnitaryMatrix phased{std::exp(kImag * 0.7) * u.matrix()};
  CHECK(std::abs(fidelity(phased, u) - fidelity(u, u)) <= 1e-14);

  // theta = pi/2, eps = 0.1: fidelity is cos(pi/40).
  const UnitaryMatrix errored = expm_rotation(ix, (kPi / 2) * 1.1);
  const double f = fidelity(errored, u);
  CHECK(f == doctest::Approx(std::cos(kPi / 40)).epsilon(1e-13));
  CHECK(f == doctest::Approx(0.996917).epsilon(1e-6));
}

TEST_CASE("naive-error fidelity equals |cos(eps theta / 2)| for all named axes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-4 * kPi, 4 * kPi);
  std::uniform_real_distribution<double> error(-1.0, 1.0);
  for (const auto& g : named_generators()) {
    for (int i = 0; i < 10; ++i) {
      const double theta = angle(rng);
      const double eps = error(rng);
      const UnitaryMatrix ideal = expm_rotation(g, theta);
      const UnitaryMatrix errored = expm_rotation(g, theta * (1 + eps));
      CHECK(std::abs(fidelity(errored, ideal) -
                     std::abs(std::cos(eps * theta / 2))) <= 1e-12);
    }
  }
}

TEST_CASE("fidelity is symmetric and bounded") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> angle(-4 * kPi, 4 * kPi);
  const auto gens = named_generators();
  std::uniform_int_distribution<std::size_t> pick(3, gens.size() - 1);  // dim 4
  for (int i = 0; i < 25; ++i) {
    const UnitaryMatrix a = expm_rotation(gens[pick(rng)], angle(rng));
    const UnitaryMatrix b = expm_rotation(gens[pick(rng)], angle(rng));
    const double fab = fidelity(a, b);
    CHECK(fab >= 0.0);
    CHECK(fab <= 1.0 + 1e-12);
    CHECK(std::abs(fab - fidelity(b, a)) <= 1e-14);
  }
}

TEST_CASE("fidelity rejects dimension mismatch") {
  const UnitaryMatrix u2 = UnitaryMatrix::identity(2);
  const UnitaryMatrix u4 = UnitaryMatrix::identity(4);
  CHECK_THROWS_AS(fidelity(u2, u4), std::invalid_argument);
  CHECK_THROWS_AS(equal_up_to_global_phase(u2, u4, 1e-10),
                  std::invalid_argument);
}

TEST_CASE("global-phase comparison") {
  const Generator zx = product_operator(ProductOperator::TwoIzSx, 4);
  const UnitaryMatrix u = expm_rotation(zx, 1.1);
  const UnitaryMatrix phased{std::exp(kImag * kPi / 7.0) * u.matrix()};
  CHECK(equal_up_to_global_phase(u, phased, 1e-12));
  CHECK(equal_up_to_global_phase(phased, u, 1e-12));

  Matrix cz = Matrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  CHECK_FALSE(equal_up_to_global_phase(UnitaryMatrix::identity(4),
                                       UnitaryMatrix{cz}, 1e-12));
}

TEST_CASE("unitary construction validates its input") {
  Matrix not_unitary = Matrix::Identity(2, 2) * 1.5;
  CHECK_THROWS_AS(UnitaryMatrix{not_unitary}, std::invalid_argument);
  Matrix wrong_dim = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(UnitaryMatrix{wrong_dim}, std::invalid_argument);
}
