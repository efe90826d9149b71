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

#include "isingsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace isingsim {

namespace {

constexpr double kInfidelityNoiseFloor = 1e-13;
constexpr double kBisectionRelPrecision = 1e-4;
constexpr int kScanSamples = 256;

std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("ISINGSIM_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(cap, &end, 10);
    if (end != cap && parsed > 0) {
      n = std::min<std::size_t>(n, static_cast<std::size_t>(parsed));
    }
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

// Evaluates fn over [0, count) with results stored by index; grid order is
// preserved regardless of the worker count.  The first exception thrown by
// any worker is rethrown on the calling thread.
void parallel_for_index(std::size_t count,
                        const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = worker_count(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

ErrorModel model_for(ErrorAxis axis, double eps) {
  ErrorModel em;
  (axis == ErrorAxis::Coupling ? em.coupling_error : em.pulse_error) = eps;
  return em;
}

}  // namespace

std::string to_string(ErrorAxis axis) {
  return axis == ErrorAxis::Coupling ? "coupling" : "pulse";
}

CurveGenerator fidelity_vs_error(SequenceFamily family, double theta,
                                 ErrorAxis axis) {
  const PulseSequence seq = build_sequence(family, theta);
  const UnitaryMatrix ideal = compile(seq);
  return [seq, ideal, axis](double eps) {
    return fidelity(compile(seq, model_for(axis, eps)), ideal);
  };
}

std::vector<double> uniform_grid(double min, double max, double step) {
  if (!(step > 0.0) || !(min < max)) {
    throw std::invalid_argument("uniform_grid: need min < max and step > 0");
  }
  const double span = (max - min) / step;
  std::size_t count = static_cast<std::size_t>(std::floor(span)) + 1;
  // Snap to an inclusive endpoint when the span is an integral number of
  // steps up to rounding.
  if (std::abs(span - std::round(span)) < 1e-9) {
    count = static_cast<std::size_t>(std::llround(span)) + 1;
  }
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = min + static_cast<double>(i) * step;
  }
  return grid;
}

FidelityCurve sweep(SequenceFamily family, double theta,
                    const UnitaryMatrix& ideal, ErrorAxis axis,
                    const std::vector<double>& eps_grid) {
  for (std::size_t i = 1; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i - 1] < eps_grid[i])) {
      throw std::invalid_argument("sweep: grid must be strictly increasing");
    }
  }
  const PulseSequence seq = build_sequence(family, theta);
  if (seq.dim != ideal.dim()) {
    throw std::invalid_argument("sweep: builder/ideal dimension mismatch");
  }

  FidelityCurve curve;
  {
    std::ostringstream name;
    name << family_name(family) << " theta=" << theta;
    curve.family = name.str();
  }
  curve.samples.resize(eps_grid.size());
  parallel_for_index(eps_grid.size(), [&](std::size_t i) {
    const double eps = eps_grid[i];
    curve.samples[i] = {eps,
                        fidelity(compile(seq, model_for(axis, eps)), ideal)};
  });
  return curve;
}

FidelityCurve sweep(SequenceFamily family, double theta, ErrorAxis axis,
                    const std::vector<double>& eps_grid) {
  const UnitaryMatrix ideal = compile(build_sequence(family, theta));
  FidelityCurve curve = sweep(family, theta, ideal, axis, eps_grid);
  curve.ideal = family_name(family) + " at zero error";
  return curve;
}

SeriesFit fit_leading_order(const CurveGenerator& curve, double eps_min,
                            double eps_max, int n_points) {
  if (!(0.0 < eps_min && eps_min < eps_max)) {
    throw std::invalid_argument("fit_leading_order: need 0 < eps_min < eps_max");
  }
  if (n_points < 2) {
    throw std::invalid_argument("fit_leading_order: need at least 2 points");
  }

  std::vector<double> log_eps(n_points);
  std::vector<double> log_infid(n_points);
  const double log_ratio = std::log(eps_max / eps_min);
  for (int i = 0; i < n_points; ++i) {
    const double eps =
        eps_min * std::exp(log_ratio * i / static_cast<double>(n_points - 1));
    const double infidelity = 1.0 - curve(eps);
    if (!(infidelity > kInfidelityNoiseFloor)) {
      throw std::runtime_error(
          "fit_leading_order: infidelity below the noise floor in the "
          "window; widen or raise the window");
    }
    log_eps[i] = std::log(eps);
    log_infid[i] = std::log(infidelity);
  }

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (int i = 0; i < n_points; ++i) {
    mean_x += log_eps[i];
    mean_y += log_infid[i];
  }
  mean_x /= n_points;
  mean_y /= n_points;
  double sxx = 0.0;
  double sxy = 0.0;
  for (int i = 0; i < n_points; ++i) {
    sxx += (log_eps[i] - mean_x) * (log_eps[i] - mean_x);
    sxy += (log_eps[i] - mean_x) * (log_infid[i] - mean_y);
  }
  const double slope = sxy / sxx;
  const int exponent = static_cast<int>(std::lround(slope));
  if (exponent < 1 || std::abs(slope - exponent) > 0.05) {
    throw std::runtime_error(
        "fit_leading_order: slope does not resolve an integer power law in "
        "this window");
  }

  // Re-fit the amplitude with the slope pinned to the integer exponent; the
  // free intercept extrapolates to eps = 1 and soaks up higher-order bias.
  double pinned_intercept = 0.0;
  for (int i = 0; i < n_points; ++i) {
    pinned_intercept += log_infid[i] - exponent * log_eps[i];
  }
  pinned_intercept /= n_points;
  const double coefficient = std::exp(pinned_intercept);

  double residual = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double fitted = pinned_intercept + exponent * log_eps[i];
    residual = std::max(residual, std::abs(std::expm1(fitted - log_infid[i])));
  }

  return SeriesFit{exponent, coefficient, eps_min, eps_max, slope, residual};
}

RobustRange robust_range(const CurveGenerator& curve, double threshold,
                         double search_max) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("robust_range: threshold must be in (0, 1]");
  }
  if (!(search_max > 0.0)) {
    throw std::invalid_argument("robust_range: search bound must be positive");
  }

  const auto infidelity = [&curve](double eps) { return 1.0 - curve(eps); };

  // Coarse scan for the first crossing, then bisection inside the bracket.
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  for (int i = 1; i <= kScanSamples; ++i) {
    const double eps = search_max * i / kScanSamples;
    if (infidelity(eps) > threshold) {
      hi = eps;
      found = true;
      break;
    }
    lo = eps;
  }
  if (!found) {
    return RobustRange{search_max, true};
  }
  while (hi - lo > kBisectionRelPrecision * hi) {
    const double mid = 0.5 * (lo + hi);
    if (infidelity(mid) > threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return RobustRange{0.5 * (lo + hi), false};
}

double range_ratio(const CurveGenerator& naive, const CurveGenerator& robust,
                   double threshold, double search_max) {
  const RobustRange naive_result = robust_range(naive, threshold, search_max);
  const RobustRange robust_result = robust_range(robust, threshold, search_max);
  return robust_result.eps_max / naive_result.eps_max;
}

void write_csv(std::ostream& os, const FidelityCurve& curve) {
  os << "epsilon,fidelity,infidelity\n";
  char buffer[128];
  for (const auto& [eps, fid] : curve.samples) {
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g\n", eps, fid,
                  1.0 - fid);
    os << buffer;
  }
}

}  // namespace isingsim
