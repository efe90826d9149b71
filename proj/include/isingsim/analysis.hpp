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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "isingsim/pulses.hpp"

/// Error sweeps, fidelity curves, leading-order power-law recovery, and
/// robust-range analysis on top of the pulse-sequence compiler.
namespace isingsim {

/// Which fractional error the sweep varies; the other stays zero.
enum class ErrorAxis { Coupling, Pulse };

std::string to_string(ErrorAxis axis);

/// Fidelity as a function of one fractional error.
using CurveGenerator = std::function<double(double)>;

/// An evaluated fidelity curve: samples are (epsilon, F) with strictly
/// increasing epsilon.
struct FidelityCurve {
  std::string family;  // builder identifier + theta
  std::string ideal;   // gate identifier
  std::vector<std::pair<double, double>> samples;
};

/// Binds a family at angle theta to the fidelity-vs-error function
/// F(eps) = fidelity(compile(seq, eps on axis), compile(seq, no error)).
CurveGenerator fidelity_vs_error(SequenceFamily family, double theta,
                                 ErrorAxis axis);

/// Uniform grid min, min + step, ..., spanning [min, max].
std::vector<double> uniform_grid(double min, double max, double step);

/// Evaluates the curve over the grid (strictly increasing) against an
/// explicit ideal gate.  Grid points are evaluated concurrently; the
/// ISINGSIM_THREADS environment variable caps the worker count.
FidelityCurve sweep(SequenceFamily family, double theta,
                    const UnitaryMatrix& ideal, ErrorAxis axis,
                    const std::vector<double>& eps_grid);

/// Same, with the ideal gate defaulted to the zero-error compile of the
/// family itself.
FidelityCurve sweep(SequenceFamily family, double theta, ErrorAxis axis,
                    const std::vector<double>& eps_grid);

/// Leading power law of the infidelity 1 - F(eps) over a window.
struct SeriesFit {
  int exponent;        // nearest integer to the free log-log slope
  double coefficient;  // amplitude with the slope pinned to `exponent`
  double eps_min;
  double eps_max;
  double slope;     // unconstrained least-squares slope
  double residual;  // max relative deviation of the pinned fit in-window
};

/// Fits log(1 - F) vs log(eps) on n_points geometrically spaced in
/// [eps_min, eps_max]: least-squares slope rounded to the integer exponent,
/// then the coefficient re-fit with the exponent pinned.  Throws if any
/// infidelity in the window sits below the 1e-13 noise floor or if the
/// rounded slope is off by more than 0.05.
SeriesFit fit_leading_order(const CurveGenerator& curve, double eps_min,
                            double eps_max, int n_points = 30);

struct RobustRange {
  double eps_max;
  bool hit_search_bound;  // threshold never exceeded up to the search bound
};

/// Largest eps such that 1 - F stays at or below the threshold on [0, eps],
/// located by coarse scan plus bisection to relative precision 1e-4.
RobustRange robust_range(const CurveGenerator& curve, double threshold,
                         double search_max = 1.0);

/// robust_range(robust) / robust_range(naive) at a shared threshold.
double range_ratio(const CurveGenerator& naive, const CurveGenerator& robust,
                   double threshold, double search_max = 1.0);

/// CSV export: header `epsilon,fidelity,infidelity`, one row per sample,
/// full double precision (17 significant digits).
void write_csv(std::ostream& os, const FidelityCurve& curve);

}  // namespace isingsim
