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

#include "isingsim/pulses.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace isingsim {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kImag{0.0, 1.0};

double normalize_phase(double phase) {
  double p = std::fmod(phase, 2 * kPi);
  if (p < 0) p += 2 * kPi;
  if (p >= 2 * kPi) p = 0.0;  // fmod can round up to the period itself
  return p;
}

void require_finite_angle(double angle, const char* what) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument(std::string(what) + ": angle must be finite");
  }
}

Matrix embed_on(Spin target, const Matrix& op2, int dim) {
  if (dim == 2) return op2;
  const Matrix id2 = Matrix::Identity(2, 2);
  return target == Spin::I ? kroneckerProduct(op2, id2).eval()
                           : kroneckerProduct(id2, op2).eval();
}

// In-plane single-spin axis Gx cos(phase) + Gy sin(phase) on the target.
Generator in_plane_axis(Spin target, double phase, int dim) {
  const auto x_label =
      target == Spin::I ? ProductOperator::Ix : ProductOperator::Sx;
  const auto y_label =
      target == Spin::I ? ProductOperator::Iy : ProductOperator::Sy;
  const Matrix axis = std::cos(phase) * product_operator(x_label, dim).matrix() +
                      std::sin(phase) * product_operator(y_label, dim).matrix();
  return Generator(axis);
}

// Coupling axis 2IzSz cos(phase) + 2IzSx sin(phase).
Generator coupling_axis(double phase) {
  const Matrix axis =
      std::cos(phase) *
          product_operator(ProductOperator::TwoIzSz, 4).matrix() +
      std::sin(phase) * product_operator(ProductOperator::TwoIzSx, 4).matrix();
  return Generator(axis);
}

Matrix z_rotation_matrix(Spin target, double angle, int dim) {
  Matrix rz(2, 2);
  rz << std::exp(-kImag * angle / 2.0), 0, 0, std::exp(kImag * angle / 2.0);
  return embed_on(target, rz, dim);
}

Matrix hadamard_matrix(Spin target, int dim) {
  Matrix h(2, 2);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
  return embed_on(target, h, dim);
}

UnitaryMatrix dressing_propagator(const DressingOp& op, int dim) {
  switch (op.kind) {
    case DressingOp::Kind::ZRotation:
      return UnitaryMatrix(z_rotation_matrix(op.target, op.angle, dim));
    case DressingOp::Kind::Hadamard:
      return UnitaryMatrix(hadamard_matrix(op.target, dim));
  }
  throw std::invalid_argument("unknown dressing kind");
}

void validate_sequence(const PulseSequence& seq) {
  if (seq.dim != 2 && seq.dim != 4) {
    throw std::invalid_argument("PulseSequence: dim must be 2 or 4");
  }
  if (seq.elements.empty()) {
    throw std::invalid_argument("PulseSequence: empty element list");
  }
  for (const auto& e : seq.elements) {
    if (e.is_coupling() && seq.dim != 4) {
      throw std::invalid_argument(
          "PulseSequence: coupling elements need dim 4");
    }
  }
}

// The five BB1 (angle, axis phase) pairs in time order.
std::vector<std::pair<double, double>> bb1_schedule(double theta,
                                                    double axis_phase) {
  const Bb1Angles angles = bb1_angles(theta);
  return {{theta / 2, axis_phase},
          {kPi, axis_phase + angles.phi1},
          {2 * kPi, axis_phase + angles.phi2},
          {kPi, axis_phase + angles.phi1},
          {theta / 2, axis_phase}};
}

// z rotations turning the pi/2 Ising evolution into the controlled-phase
// gate (verified against the printed matrix in the tests).
const std::vector<DressingOp> kCzDressing = {
    DressingOp::z_rotation(Spin::I, -kPi / 2),
    DressingOp::z_rotation(Spin::S, -kPi / 2),
};

}  // namespace

std::string to_string(Spin spin) { return spin == Spin::I ? "I" : "S"; }

std::string to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::SingleQubitPulse:
      return "pulse";
    case ElementKind::IsingEvolution:
      return "evolution";
    case ElementKind::TiltedIsing:
      return "tilted";
  }
  throw std::invalid_argument("unknown element kind");
}

PulseElement PulseElement::single_qubit_pulse(Spin target, double angle,
                                              double phase) {
  require_finite_angle(angle, "single_qubit_pulse");
  return PulseElement{ElementKind::SingleQubitPulse, target, angle,
                      normalize_phase(phase)};
}

PulseElement PulseElement::ising_evolution(double angle) {
  require_finite_angle(angle, "ising_evolution");
  return PulseElement{ElementKind::IsingEvolution, std::nullopt, angle, 0.0};
}

PulseElement PulseElement::tilted_ising(double angle, double phase) {
  require_finite_angle(angle, "tilted_ising");
  return PulseElement{ElementKind::TiltedIsing, std::nullopt, angle,
                      normalize_phase(phase)};
}

double PulseElement::duration_t() const {
  return is_coupling() ? rotation_angle / (kPi / 4) : 0.0;
}

DressingOp DressingOp::z_rotation(Spin target, double angle) {
  require_finite_angle(angle, "z_rotation");
  return DressingOp{Kind::ZRotation, target, angle};
}

DressingOp DressingOp::hadamard(Spin target) {
  return DressingOp{Kind::Hadamard, target, 0.0};
}

void validate(const ErrorModel& em) {
  // coupling_error = -1 (vanishing coupling) is allowed so that full +/-100%
  // sweeps include the endpoint; a sign change (< -1) is not.
  if (!(em.coupling_error >= -1.0)) {
    throw std::domain_error("ErrorModel: coupling_error must be >= -1");
  }
  if (!(em.time_scale > 0.0)) {
    throw std::domain_error("ErrorModel: time_scale must be positive");
  }
  if (!std::isfinite(em.pulse_error)) {
    throw std::domain_error("ErrorModel: pulse_error must be finite");
  }
}

UnitaryMatrix element_propagator(const PulseElement& element,
                                 const ErrorModel& em, int dim) {
  validate(em);
  switch (element.kind) {
    case ElementKind::SingleQubitPulse: {
      if (!element.target.has_value()) {
        throw std::invalid_argument("single-qubit pulse without target");
      }
      if (dim == 2 && *element.target == Spin::S) {
        throw std::invalid_argument("spin S does not exist at dim 2");
      }
      const Generator axis = in_plane_axis(*element.target, element.phase, dim);
      return expm_rotation(axis,
                           element.rotation_angle * (1.0 + em.pulse_error));
    }
    case ElementKind::IsingEvolution:
    case ElementKind::TiltedIsing: {
      if (dim != 4) {
        throw std::invalid_argument("coupling element needs dim 4");
      }
      const Generator axis = coupling_axis(element.phase);
      // Group the scale factor so that a time_scale s folds into the
      // coupling error exactly: (1+eps)*s == 1+((1+eps)*s-1) bitwise over
      // the Sterbenz range.
      const double scale = (1.0 + em.coupling_error) * em.time_scale;
      return expm_rotation(axis, element.rotation_angle * scale);
    }
  }
  throw std::invalid_argument("unknown element kind");
}

UnitaryMatrix compile(const PulseSequence& seq, const ErrorModel& em) {
  validate_sequence(seq);
  UnitaryMatrix u = UnitaryMatrix::identity(seq.dim);
  for (const auto& op : seq.pre) {
    u = dressing_propagator(op, seq.dim) * u;
  }
  for (const auto& element : seq.elements) {
    u = element_propagator(element, em, seq.dim) * u;
  }
  for (const auto& op : seq.post) {
    u = dressing_propagator(op, seq.dim) * u;
  }
  return u;
}

PulseSequence sandwich_decomposition(const PulseElement& element) {
  if (element.kind != ElementKind::TiltedIsing) {
    throw std::invalid_argument(
        "sandwich_decomposition: element must be a tilted Ising evolution");
  }
  // exp(-i phi Sy) exp(-i theta 2IzSz) exp(+i phi Sy) equals the tilted
  // propagator, so the -y pulse comes first in time and the +y pulse last.
  const double phi = element.phase;
  PulseSequence seq;
  seq.dim = 4;
  seq.elements = {
      PulseElement::single_qubit_pulse(Spin::S, phi, 3 * kPi / 2),
      PulseElement::ising_evolution(element.rotation_angle),
      PulseElement::single_qubit_pulse(Spin::S, phi, kPi / 2),
  };
  return seq;
}

Bb1Angles bb1_angles(double theta) {
  const double cosine = -theta / (4 * kPi);
  if (std::abs(cosine) > 1.0) {
    throw std::domain_error("bb1_angles: |theta/(4 pi)| exceeds 1");
  }
  const double phi1 = std::acos(cosine);
  return Bb1Angles{phi1, 3 * phi1};
}

PulseSequence build_naive_single_qubit(double theta, Spin target, int dim) {
  PulseSequence seq;
  seq.dim = dim;
  seq.elements = {PulseElement::single_qubit_pulse(target, theta, 0.0)};
  validate_sequence(seq);
  return seq;
}

PulseSequence build_naive_ising(double theta) {
  PulseSequence seq;
  seq.dim = 4;
  seq.elements = {PulseElement::ising_evolution(theta)};
  return seq;
}

PulseSequence build_bb1_single_qubit(double theta, Spin target, int dim,
                                     double axis_phase) {
  PulseSequence seq;
  seq.dim = dim;
  for (const auto& [angle, phase] : bb1_schedule(theta, axis_phase)) {
    seq.elements.push_back(
        PulseElement::single_qubit_pulse(target, angle, phase));
  }
  validate_sequence(seq);
  return seq;
}

PulseSequence build_bb1_ising(double theta) {
  PulseSequence seq;
  seq.dim = 4;
  for (const auto& [angle, phase] : bb1_schedule(theta, 0.0)) {
    seq.elements.push_back(phase == 0.0
                               ? PulseElement::ising_evolution(angle)
                               : PulseElement::tilted_ising(angle, phase));
  }
  return seq;
}

PulseSequence build_bb1_ising_sandwiched(double theta, bool robust_pulses) {
  PulseSequence seq;
  seq.dim = 4;
  auto append_pulse = [&](const PulseElement& pulse) {
    if (robust_pulses) {
      const PulseSequence expanded = build_bb1_single_qubit(
          pulse.rotation_angle, *pulse.target, 4, pulse.phase);
      seq.elements.insert(seq.elements.end(), expanded.elements.begin(),
                          expanded.elements.end());
    } else {
      seq.elements.push_back(pulse);
    }
  };
  for (const auto& [angle, phase] : bb1_schedule(theta, 0.0)) {
    if (normalize_phase(phase) == 0.0) {
      seq.elements.push_back(PulseElement::ising_evolution(angle));
      continue;
    }
    const PulseSequence sandwich =
        sandwich_decomposition(PulseElement::tilted_ising(angle, phase));
    append_pulse(sandwich.elements[0]);
    seq.elements.push_back(sandwich.elements[1]);
    append_pulse(sandwich.elements[2]);
  }
  return seq;
}

PulseSequence cz_from_ising() {
  PulseSequence seq;
  seq.dim = 4;
  seq.elements = {PulseElement::ising_evolution(kPi / 2)};
  seq.post = kCzDressing;
  return seq;
}

PulseSequence build_naive_cnot() {
  PulseSequence seq = cz_from_ising();
  seq.pre.push_back(DressingOp::hadamard(Spin::S));
  seq.post.push_back(DressingOp::hadamard(Spin::S));
  return seq;
}

PulseSequence build_robust_cnot(bool robust_pulses) {
  PulseSequence seq = build_bb1_ising_sandwiched(kPi / 2, robust_pulses);
  seq.pre.push_back(DressingOp::hadamard(Spin::S));
  seq.post = kCzDressing;
  seq.post.push_back(DressingOp::hadamard(Spin::S));
  return seq;
}

UnitaryMatrix ideal_ising(double phi) {
  Matrix m = Matrix::Zero(4, 4);
  const Complex plus = std::exp(kImag * phi / 2.0);
  const Complex minus = std::exp(-kImag * phi / 2.0);
  m(0, 0) = plus;
  m(1, 1) = minus;
  m(2, 2) = minus;
  m(3, 3) = plus;
  return UnitaryMatrix(m);
}

UnitaryMatrix ideal_cphase() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return UnitaryMatrix(m);
}

UnitaryMatrix ideal_cnot() {
  const Matrix h = hadamard_matrix(Spin::S, 4);
  return UnitaryMatrix(h * ideal_cphase().matrix() * h);
}

UnitaryMatrix ideal_hadamard() {
  return UnitaryMatrix(hadamard_matrix(Spin::I, 2));
}

std::string family_name(SequenceFamily family) {
  switch (family) {
    case SequenceFamily::NaiveSingleQubit:
      return "naive-single";
    case SequenceFamily::NaiveIsing:
      return "naive-ising";
    case SequenceFamily::NaiveCnot:
      return "naive-cnot";
    case SequenceFamily::Bb1SingleQubit:
      return "bb1-single";
    case SequenceFamily::Bb1Ising:
      return "bb1-ising";
    case SequenceFamily::Bb1Cnot:
      return "bb1-cnot";
  }
  throw std::invalid_argument("unknown sequence family");
}

SequenceFamily parse_family(const std::string& name) {
  for (auto family :
       {SequenceFamily::NaiveSingleQubit, SequenceFamily::NaiveIsing,
        SequenceFamily::NaiveCnot, SequenceFamily::Bb1SingleQubit,
        SequenceFamily::Bb1Ising, SequenceFamily::Bb1Cnot}) {
    if (family_name(family) == name) return family;
  }
  throw std::invalid_argument("unknown sequence family: " + name);
}

PulseSequence build_sequence(SequenceFamily family, double theta) {
  switch (family) {
    case SequenceFamily::NaiveSingleQubit:
      return build_naive_single_qubit(theta);
    case SequenceFamily::NaiveIsing:
      return build_naive_ising(theta);
    case SequenceFamily::NaiveCnot:
      return build_naive_cnot();
    case SequenceFamily::Bb1SingleQubit:
      return build_bb1_single_qubit(theta);
    case SequenceFamily::Bb1Ising:
      return build_bb1_ising_sandwiched(theta);
    case SequenceFamily::Bb1Cnot:
      return build_robust_cnot();
  }
  throw std::invalid_argument("unknown sequence family");
}

double total_coupling_duration_t(const PulseSequence& seq) {
  double total = 0.0;
  for (const auto& e : seq.elements) total += e.duration_t();
  return total;
}

namespace {

std::string format_fixed(double value, int precision = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << value;
  return os.str();
}

void dump_dressing(std::ostringstream& os, const DressingOp& op) {
  if (op.kind == DressingOp::Kind::ZRotation) {
    os << "zrot       " << to_string(op.target) << "   theta_pi="
       << format_fixed(op.angle / kPi) << "\n";
  } else {
    os << "hadamard   " << to_string(op.target) << "\n";
  }
}

}  // namespace

std::string to_text(const PulseSequence& seq) {
  std::ostringstream os;
  for (const auto& op : seq.pre) dump_dressing(os, op);
  for (const auto& e : seq.elements) {
    os << to_string(e.kind);
    os << std::string(11 - to_string(e.kind).size(), ' ');
    os << (e.target.has_value() ? to_string(*e.target) : "IS");
    os << "  theta_pi=" << format_fixed(e.rotation_angle / kPi);
    os << "  phase_deg=" << format_fixed(e.phase * 180.0 / kPi);
    if (e.is_coupling()) {
      os << "  duration_t=" << format_fixed(e.duration_t());
    }
    os << "\n";
  }
  for (const auto& op : seq.post) dump_dressing(os, op);
  os << "total_coupling_duration_t="
     << format_fixed(total_coupling_duration_t(seq)) << "\n";
  return os.str();
}

nlohmann::json to_json(const PulseSequence& seq) {
  auto dressing_json = [](const DressingOp& op) {
    nlohmann::json j;
    j["kind"] = op.kind == DressingOp::Kind::ZRotation ? "zrot" : "hadamard";
    j["target"] = to_string(op.target);
    if (op.kind == DressingOp::Kind::ZRotation) j["angle"] = op.angle;
    return j;
  };
  nlohmann::json j;
  j["dim"] = seq.dim;
  j["pre"] = nlohmann::json::array();
  for (const auto& op : seq.pre) j["pre"].push_back(dressing_json(op));
  j["elements"] = nlohmann::json::array();
  for (const auto& e : seq.elements) {
    nlohmann::json je;
    je["kind"] = to_string(e.kind);
    if (e.target.has_value()) {
      je["target"] = to_string(*e.target);
    } else {
      je["target"] = nullptr;
    }
    je["rotation_angle"] = e.rotation_angle;
    je["phase"] = e.phase;
    if (e.is_coupling()) je["duration_t"] = e.duration_t();
    j["elements"].push_back(je);
  }
  j["post"] = nlohmann::json::array();
  for (const auto& op : seq.post) j["post"].push_back(dressing_json(op));
  j["total_coupling_duration_t"] = total_coupling_duration_t(seq);
  return j;
}

}  // namespace isingsim
