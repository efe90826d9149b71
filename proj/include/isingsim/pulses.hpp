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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isingsim/su.hpp"

/// Pulse-sequence data model, systematic-error models, naive/BB1 sequence
/// builders, sequence-to-propagator compilation, and the ideal gates they
/// target (Ising coupling gate, controlled-phase, controlled-NOT).
namespace isingsim {

enum class Spin { I, S };

std::string to_string(Spin spin);

enum class ElementKind {
  /// In-plane single-qubit rotation: axis Ix cos(phase) + Iy sin(phase) on
  /// the target spin.
  SingleQubitPulse,
  /// Free evolution under the Ising coupling (rotation about 2IzSz).
  IsingEvolution,
  /// Rotation about the tilted coupling axis
  /// 2IzSz cos(phase) + 2IzSx sin(phase).
  TiltedIsing,
};

std::string to_string(ElementKind kind);

/// One sequence step with nominal parameters.  Phases are normalized to
/// [0, 2pi); an IsingEvolution is a TiltedIsing with phase 0 and no target.
struct PulseElement {
  ElementKind kind;
  std::optional<Spin> target;  // SingleQubitPulse only
  double rotation_angle;       // radians, nominal
  double phase;                // axis angle, radians in [0, 2pi)

  static PulseElement single_qubit_pulse(Spin target, double angle,
                                         double phase);
  static PulseElement ising_evolution(double angle);
  static PulseElement tilted_ising(double angle, double phase);

  bool is_coupling() const { return kind != ElementKind::SingleQubitPulse; }

  /// Free-evolution duration in units of t = 1/(4J) (angle pi/4 per unit);
  /// zero for single-qubit pulses, which are treated as instantaneous.
  double duration_t() const;
};

/// Ideal reference-frame operations that dress a coupling core into a named
/// gate (z rotations, Hadamards).  They compile error-free: the error models
/// below apply only to pulse-sequence elements.
struct DressingOp {
  enum class Kind { ZRotation, Hadamard };
  Kind kind;
  Spin target;
  double angle = 0.0;  // ZRotation only

  static DressingOp z_rotation(Spin target, double angle);
  static DressingOp hadamard(Spin target);
};

/// An ordered pulse sequence; elements[0] executes first in time.  `pre` and
/// `post` are dressing operations applied before/after the elements.
struct PulseSequence {
  int dim = 4;  // 2 or 4
  std::vector<PulseElement> elements;
  std::vector<DressingOp> pre;
  std::vector<DressingOp> post;
};

/// Fractional systematic errors.  coupling_error is
/// J_real/J_nominal - 1 and scales every coupling-derived rotation angle;
/// pulse_error scales single-qubit rotation angles; time_scale multiplies
/// all free-evolution durations (absolute-length miscalibration, equivalent
/// to a further error in J).
struct ErrorModel {
  double coupling_error = 0.0;  // must stay > -1
  double pulse_error = 0.0;
  double time_scale = 1.0;  // must stay > 0
};

void validate(const ErrorModel& em);

/// Propagator of a single element at the given dimension under the error
/// model.  Tilted elements are exponentiated directly in closed form; no
/// sandwich pulses are generated here.
UnitaryMatrix element_propagator(const PulseElement& element,
                                 const ErrorModel& em, int dim);

/// Time-ordered product of element propagators with dressing applied:
/// U = post * (U_{n-1} ... U_1 U_0) * pre.
UnitaryMatrix compile(const PulseSequence& seq, const ErrorModel& em);

inline UnitaryMatrix compile(const PulseSequence& seq) {
  return compile(seq, ErrorModel{});
}

/// Replaces a tilted element by [phase-angle pulse about -y on S,
/// bare Ising evolution, phase-angle pulse about +y on S]; the compiled
/// ideal propagator equals the closed-form tilted propagator.
PulseSequence sandwich_decomposition(const PulseElement& element);

struct Bb1Angles {
  double phi1;
  double phi2;  // = 3 * phi1
};

/// phi1 = arccos(-theta / 4pi), phi2 = 3 phi1.  Throws std::domain_error if
/// |theta/(4pi)| > 1.
Bb1Angles bb1_angles(double theta);

/// Naive single rotation of angle theta about x on the target spin.
PulseSequence build_naive_single_qubit(double theta, Spin target = Spin::I,
                                       int dim = 2);

/// Naive Ising gate: one free evolution of angle theta (duration
/// 4 theta / pi in units of t).
PulseSequence build_naive_ising(double theta);

/// Time-symmetric BB1 composite rotation about x on the target spin:
/// (theta/2)_0 pi_{phi1} 2pi_{phi2} pi_{phi1} (theta/2)_0, with all axis
/// phases shifted by axis_phase.
PulseSequence build_bb1_single_qubit(double theta, Spin target = Spin::I,
                                     int dim = 2, double axis_phase = 0.0);

/// BB1 composite Ising gate with tilted-axis elements (closed-form tilts).
PulseSequence build_bb1_ising(double theta);

/// BB1 composite Ising gate with every tilted element expanded into its
/// +/-y pulse sandwich; coupling periods have durations in the ratio
/// 1:4:8:4:1.  Zero-tilt elements stay bare evolutions.  With robust_pulses,
/// each sandwich pulse is replaced by its own single-qubit BB1 expansion.
PulseSequence build_bb1_ising_sandwiched(double theta,
                                         bool robust_pulses = false);

/// The Ising evolution of angle pi/2 dressed with the -pi/2 z rotations that
/// turn it into the controlled-phase gate (up to global phase).
PulseSequence cz_from_ising();

/// cz_from_ising conjugated by Hadamards on the target spin: a naive
/// controlled-NOT.
PulseSequence build_naive_cnot();

/// The sandwiched BB1 Ising core dressed into a controlled-NOT (z rotations
/// plus Hadamards on the target spin).
PulseSequence build_robust_cnot(bool robust_pulses = false);

// Ideal gates, as conventionally printed.
//
// ideal_ising is diag(e^{i phi/2}, e^{-i phi/2}, e^{-i phi/2}, e^{i phi/2});
// evolution under the coupling for the same angle gives its conjugate,
// exp(-i phi 2IzSz).  The two differ only by the sign convention and agree
// at the fidelity level.
UnitaryMatrix ideal_ising(double phi);
UnitaryMatrix ideal_cphase();    // diag(1, 1, 1, -1)
UnitaryMatrix ideal_cnot();      // |10> <-> |11| swap block
UnitaryMatrix ideal_hadamard();  // 2x2

/// The buildable sequence families exposed by the CLI and sweeps.
enum class SequenceFamily {
  NaiveSingleQubit,
  NaiveIsing,
  NaiveCnot,
  Bb1SingleQubit,
  Bb1Ising,
  Bb1Cnot,
};

std::string family_name(SequenceFamily family);
SequenceFamily parse_family(const std::string& name);

/// Builds the named family at rotation angle theta (the cnot families fix
/// theta = pi/2 internally).  The Bb1Ising family uses the sandwiched form,
/// matching the physically executable schedule.
PulseSequence build_sequence(SequenceFamily family, double theta);

/// Total free-evolution duration in units of t = 1/(4J).
double total_coupling_duration_t(const PulseSequence& seq);

/// Line-oriented dump: one element per line (kind, target, rotation angle in
/// units of pi, axis phase in degrees, duration in units of t for coupling
/// elements), dressing included, plus a total-duration summary line.
std::string to_text(const PulseSequence& seq);

/// Structured form of the same listing (angles in radians).
nlohmann::json to_json(const PulseSequence& seq);

}  // namespace isingsim
