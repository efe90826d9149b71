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
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "isingsim/analysis.hpp"

using namespace isingsim;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kOrder2Coeff = kPi * kPi / 32.0;            // theta^2/8 at pi/2
const double kOrder6Coeff = 63.0 * std::pow(kPi, 6) / 65536.0;
}  // namespace

TEST_CASE("uniform grid covers the inclusive span") {
  const auto grid = uniform_grid(-0.1, 0.1, 0.001);
  REQUIRE(grid.size() == 201);
  CHECK(grid.front() == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(grid.back() == doctest::Approx(0.1).epsilon(1e-12));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i - 1] < grid[i]);
  }

  CHECK(uniform_grid(-1.0, 1.0, 0.01).size() == 201);
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("naive ising sweep hits the exact cosine values") {
  const FidelityCurve curve = sweep(SequenceFamily::NaiveIsing, kPi / 2,
                                    ErrorAxis::Coupling, {-1.0, 0.0, 1.0});
  REQUIRE(curve.samples.size() == 3);
  CHECK(curve.samples[0].second ==
        doctest::Approx(std::cos(kPi / 4)).epsilon(1e-13));
  CHECK(curve.samples[1].second == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(curve.samples[2].second ==
        doctest::Approx(std::cos(kPi / 4)).epsilon(1e-13));
}

TEST_CASE("bb1 ising sweep stays flat near zero error") {
  const FidelityCurve curve = sweep(SequenceFamily::Bb1Ising, kPi / 2,
                                    ErrorAxis::Coupling, {0.0, 0.1});
  CHECK(curve.samples[0].second == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(1.0 - curve.samples[1].second ==
        doctest::Approx(9.24e-7).epsilon(0.05));
}

TEST_CASE("sweep validates grids and dimensions") {
  CHECK_THROWS_AS(sweep(SequenceFamily::NaiveIsing, kPi / 2,
                        ErrorAxis::Coupling, {0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep(SequenceFamily::NaiveIsing, kPi / 2,
                        UnitaryMatrix::identity(2), ErrorAxis::Coupling,
                        {0.0, 0.1}),
                  std::invalid_argument);
}

TEST_CASE("sweep results do not depend on the worker count") {
  const auto grid = uniform_grid(-0.5, 0.5, 0.01);
  setenv("ISINGSIM_THREADS", "1", 1);
  const FidelityCurve serial =
      sweep(SequenceFamily::Bb1Ising, kPi / 2, ErrorAxis::Coupling, grid);
  setenv("ISINGSIM_THREADS", "4", 1);
  const FidelityCurve threaded =
      sweep(SequenceFamily::Bb1Ising, kPi / 2, ErrorAxis::Coupling, grid);
  unsetenv("ISINGSIM_THREADS");
  REQUIRE(serial.samples.size() == threaded.samples.size());
  for (std::size_t i = 0; i < serial.samples.size(); ++i) {
    CHECK(serial.samples[i].first == threaded.samples[i].first);
    CHECK(serial.samples[i].second == threaded.samples[i].second);
  }
}

TEST_CASE("naive curves are even in the error") {
  const auto curve =
      fidelity_vs_error(SequenceFamily::NaiveIsing, kPi / 2,
                        ErrorAxis::Coupling);
  for (double eps : {0.1, 0.37, 0.92}) {
    CHECK(std::abs(curve(eps) - curve(-eps)) <= 1e-14);
  }
}

TEST_CASE("leading-order fits recover the expansion constants") {
  SUBCASE("naive ising: order 2, pi^2/32") {
    const auto curve = fidelity_vs_error(SequenceFamily::NaiveIsing, kPi / 2,
                                         ErrorAxis::Coupling);
    const SeriesFit fit = fit_leading_order(curve, 1e-3, 1e-2);
    CHECK(fit.exponent == 2);
    CHECK(std::abs(fit.slope - 2) <= 0.05);
    CHECK(fit.coefficient == doctest::Approx(kOrder2Coeff).epsilon(0.01));
    CHECK(fit.residual < 0.01);
  }

  SUBCASE("naive single-qubit: order 2, theta^2/8") {
    const auto curve = fidelity_vs_error(SequenceFamily::NaiveSingleQubit,
                                         kPi / 2, ErrorAxis::Pulse);
    const SeriesFit fit = fit_leading_order(curve, 1e-3, 1e-2);
    CHECK(fit.exponent == 2);
    CHECK(fit.coefficient == doctest::Approx(kOrder2Coeff).epsilon(0.01));
  }

  SUBCASE("bb1 ising: order 6, 63 pi^6/65536") {
    const auto curve = fidelity_vs_error(SequenceFamily::Bb1Ising, kPi / 2,
                                         ErrorAxis::Coupling);
    const SeriesFit fit = fit_leading_order(curve, 0.03, 0.1);
    CHECK(fit.exponent == 6);
    CHECK(std::abs(fit.slope - 6) <= 0.05);
    CHECK(fit.coefficient == doctest::Approx(kOrder6Coeff).epsilon(0.02));
  }

  SUBCASE("bb1 single-qubit: order 6, the same magnitude at theta = pi/2") {
    const auto curve = fidelity_vs_error(SequenceFamily::Bb1SingleQubit,
                                         kPi / 2, ErrorAxis::Pulse);
    const SeriesFit fit = fit_leading_order(curve, 0.03, 0.1);
    CHECK(fit.exponent == 6);
    const double theta = kPi / 2;
    const double magnitude =
        std::abs(std::pow(theta, 6) - 14 * kPi * kPi * std::pow(theta, 4) -
                 32 * std::pow(kPi, 4) * theta * theta) /
        9216.0;
    CHECK(magnitude == doctest::Approx(kOrder6Coeff).epsilon(1e-12));
    CHECK(fit.coefficient == doctest::Approx(magnitude).epsilon(0.02));
  }
}

TEST_CASE("fitted exponents hold across rotation angles") {
  for (double theta : {kPi / 4, kPi / 2, kPi}) {
    const auto naive_ising =
        fidelity_vs_error(SequenceFamily::NaiveIsing, theta,
                          ErrorAxis::Coupling);
    CHECK(fit_leading_order(naive_ising, 1e-3, 1e-2).exponent == 2);
    const auto naive_single = fidelity_vs_error(
        SequenceFamily::NaiveSingleQubit, theta, ErrorAxis::Pulse);
    const SeriesFit naive_fit = fit_leading_order(naive_single, 1e-3, 1e-2);
    CHECK(naive_fit.exponent == 2);
    CHECK(naive_fit.coefficient ==
          doctest::Approx(theta * theta / 8).epsilon(0.01));

    const auto bb1_ising =
        fidelity_vs_error(SequenceFamily::Bb1Ising, theta, ErrorAxis::Coupling);
    CHECK(fit_leading_order(bb1_ising, 0.03, 0.1).exponent == 6);
    const auto bb1_single = fidelity_vs_error(SequenceFamily::Bb1SingleQubit,
                                              theta, ErrorAxis::Pulse);
    CHECK(fit_leading_order(bb1_single, 0.03, 0.1).exponent == 6);
  }
}

TEST_CASE("fit rejects windows at the noise floor") {
  const auto curve = fidelity_vs_error(SequenceFamily::Bb1Ising, kPi / 2,
                                       ErrorAxis::Coupling);
  CHECK_THROWS_AS(fit_leading_order(curve, 1e-7, 1e-6), std::runtime_error);
  CHECK_THROWS_AS(fit_leading_order(curve, 0.1, 0.03), std::invalid_argument);
}

TEST_CASE("robust range reproduces the tolerance claims") {
  const auto naive = fidelity_vs_error(SequenceFamily::NaiveIsing, kPi / 2,
                                       ErrorAxis::Coupling);
  const RobustRange naive_range = robust_range(naive, 1e-6);
  CHECK_FALSE(naive_range.hit_search_bound);
  CHECK(naive_range.eps_max == doctest::Approx(1.80e-3).epsilon(0.02));

  const auto robust = fidelity_vs_error(SequenceFamily::Bb1Ising, kPi / 2,
                                        ErrorAxis::Coupling);
  const RobustRange robust_result = robust_range(robust, 1e-6);
  CHECK_FALSE(robust_result.hit_search_bound);
  CHECK(robust_result.eps_max >= 0.095);
  CHECK(robust_result.eps_max <= 0.105);
}

TEST_CASE("robust range returns the search bound when never exceeded") {
  const auto naive = fidelity_vs_error(SequenceFamily::NaiveIsing, kPi / 2,
                                       ErrorAxis::Coupling);
  const RobustRange range = robust_range(naive, 1.0);
  CHECK(range.hit_search_bound);
  CHECK(range.eps_max == 1.0);

  CHECK_THROWS_AS(robust_range(naive, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(robust_range(naive, 1.5), std::invalid_argument);
}

TEST_CASE("robust range shrinks with the threshold") {
  const auto robust = fidelity_vs_error(SequenceFamily::Bb1Ising, kPi / 2,
                                        ErrorAxis::Coupling);
  double previous = 1.0;
  for (double threshold : {1e-4, 1e-6, 1e-8}) {
    const double eps_max = robust_range(robust, threshold).eps_max;
    CHECK(eps_max <= previous);
    previous = eps_max;
  }
}

TEST_CASE("range ratio exceeds 50 and grows as the threshold shrinks") {
  const auto naive = fidelity_vs_error(SequenceFamily::NaiveIsing, kPi / 2,
                                       ErrorAxis::Coupling);
  const auto robust = fidelity_vs_error(SequenceFamily::Bb1Ising, kPi / 2,
                                        ErrorAxis::Coupling);
  const double at_1e6 = range_ratio(naive, robust, 1e-6);
  CHECK(at_1e6 > 50.0);
  CHECK(at_1e6 > 55.0);
  CHECK(at_1e6 < 60.0);

  CHECK(range_ratio(naive, naive, 1e-6) == doctest::Approx(1.0).epsilon(1e-12));

  const double at_1e8 = range_ratio(naive, robust, 1e-8);
  CHECK(at_1e8 > at_1e6);
}

TEST_CASE("csv export is headered, complete, and round-trippable") {
  const FidelityCurve curve = sweep(SequenceFamily::NaiveIsing, kPi / 2,
                                    ErrorAxis::Coupling,
                                    uniform_grid(-0.05, 0.05, 0.01));
  std::ostringstream os;
  write_csv(os, curve);
  std::istringstream is(os.str());

  std::string header;
  std::getline(is, header);
  CHECK(header == "epsilon,fidelity,infidelity");

  std::size_t rows = 0;
  std::string line;
  while (std::getline(is, line)) {
    const auto first_comma = line.find(',');
    const auto second_comma = line.find(',', first_comma + 1);
    REQUIRE(first_comma != std::string::npos);
    REQUIRE(second_comma != std::string::npos);
    const double eps = std::stod(line.substr(0, first_comma));
    const double fid = std::stod(
        line.substr(first_comma + 1, second_comma - first_comma - 1));
    // 17 significant digits reproduce the doubles exactly.
    CHECK(eps == curve.samples[rows].first);
    CHECK(fid == curve.samples[rows].second);
    ++rows;
  }
  CHECK(rows == curve.samples.size());
}
