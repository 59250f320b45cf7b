// Copyright 2026 The iontrap-bell Authors
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

#include "iontrap/hilbert.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace iontrap {
namespace {

void check_normalized(const Eigen::VectorXcd& amplitudes, const char* what) {
  const double norm = amplitudes.norm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg << what << ": amplitudes not normalized (norm = " << norm << ")";
    throw std::invalid_argument(msg.str());
  }
}

Eigen::VectorXcd normalize_or_throw(Eigen::VectorXcd amplitudes, const char* what) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument(std::string(what) + ": cannot normalize a zero-norm vector");
  }
  amplitudes /= norm;
  return amplitudes;
}

}  // namespace

std::string to_string(Qubit q) { return q == Qubit::g ? "g" : "e"; }

Qubit parse_qubit(const std::string& text) {
  if (text == "g") return Qubit::g;
  if (text == "e") return Qubit::e;
  throw std::invalid_argument("qubit label must be 'g' or 'e', got '" + text + "'");
}

FockCutoffs::FockCutoffs(std::size_t field_dim, std::size_t vib_dim)
    : field_dim_(field_dim), vib_dim_(vib_dim) {
  if (field_dim == 0 || vib_dim == 0) {
    throw std::invalid_argument("Fock cutoffs must be at least 1 in each mode");
  }
}

FockCutoffs::Labels FockCutoffs::labels(std::size_t index) const {
  if (index >= total_dim()) {
    throw std::out_of_range("basis index " + std::to_string(index) + " out of range");
  }
  const std::size_t pair = index / 2;
  return {pair / vib_dim_, pair % vib_dim_, static_cast<Qubit>(index % 2)};
}

std::string basis_label(const FockCutoffs& cutoffs, std::size_t index) {
  const auto l = cutoffs.labels(index);
  std::ostringstream out;
  out << "|" << l.n_f << "," << l.m_v << "," << to_string(l.q) << ">";
  return out.str();
}

PureState::PureState(FockCutoffs cutoffs, Eigen::VectorXcd amplitudes)
    : cutoffs_(cutoffs), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != cutoffs_.total_dim()) {
    throw std::invalid_argument("PureState: amplitude count does not match cutoffs");
  }
  check_normalized(amplitudes_, "PureState");
}

PureState PureState::normalized(FockCutoffs cutoffs, Eigen::VectorXcd amplitudes) {
  return PureState(cutoffs, normalize_or_throw(std::move(amplitudes), "PureState"));
}

BipartiteState::BipartiteState(FockCutoffs cutoffs, Eigen::VectorXcd amplitudes)
    : cutoffs_(cutoffs), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != cutoffs_.pair_dim()) {
    throw std::invalid_argument("BipartiteState: amplitude count does not match cutoffs");
  }
  check_normalized(amplitudes_, "BipartiteState");
}

BipartiteState BipartiteState::normalized(FockCutoffs cutoffs, Eigen::VectorXcd amplitudes) {
  return BipartiteState(cutoffs, normalize_or_throw(std::move(amplitudes), "BipartiteState"));
}

Eigen::MatrixXcd BipartiteState::as_matrix() const {
  const auto rows = static_cast<Eigen::Index>(cutoffs_.field_dim());
  const auto cols = static_cast<Eigen::Index>(cutoffs_.vib_dim());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index n = 0; n < rows; ++n) {
    for (Eigen::Index v = 0; v < cols; ++v) m(n, v) = amplitudes_[n * cols + v];
  }
  return m;
}

PureState basis_state(const FockCutoffs& cutoffs, long n_f, long m_v, Qubit q) {
  if (!cutoffs.contains(n_f, m_v)) {
    std::ostringstream msg;
    msg << "basis_state: occupation (n_f=" << n_f << ", m_v=" << m_v
        << ") outside cutoffs (" << cutoffs.field_dim() << ", " << cutoffs.vib_dim() << ")";
    throw std::invalid_argument(msg.str());
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoffs.total_dim()));
  amps[static_cast<Eigen::Index>(cutoffs.index(static_cast<std::size_t>(n_f),
                                               static_cast<std::size_t>(m_v), q))] = 1.0;
  return PureState(cutoffs, std::move(amps));
}

PureState superpose(const std::vector<std::pair<Complex, PureState>>& terms) {
  if (terms.empty()) throw std::invalid_argument("superpose: no terms");
  const FockCutoffs& cutoffs = terms.front().second.cutoffs();
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoffs.total_dim()));
  for (const auto& [coefficient, state] : terms) {
    if (!(state.cutoffs() == cutoffs)) {
      throw std::invalid_argument("superpose: terms have mismatched cutoffs");
    }
    sum += coefficient * state.amplitudes();
  }
  // Anything below the normalization tolerance is cancellation noise.
  if (sum.norm() <= kNormTolerance) {
    throw std::invalid_argument("superpose: linear combination has zero norm");
  }
  return PureState::normalized(cutoffs, std::move(sum));
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (!(a.cutoffs() == b.cutoffs())) {
    throw std::invalid_argument("inner_product: mismatched cutoffs");
  }
  return a.amplitudes().dot(b.amplitudes());
}

Complex inner_product(const BipartiteState& a, const BipartiteState& b) {
  if (!(a.cutoffs() == b.cutoffs())) {
    throw std::invalid_argument("inner_product: mismatched cutoffs");
  }
  return a.amplitudes().dot(b.amplitudes());
}

std::string to_json(const PureState& state, int indent) {
  nlohmann::json doc;
  doc["field_dim"] = state.cutoffs().field_dim();
  doc["vib_dim"] = state.cutoffs().vib_dim();
  auto amps = nlohmann::json::array();
  for (const Complex& a : state.amplitudes()) amps.push_back({a.real(), a.imag()});
  doc["amplitudes"] = std::move(amps);
  return doc.dump(indent);
}

PureState pure_state_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    const FockCutoffs cutoffs(doc.at("field_dim").get<std::size_t>(),
                              doc.at("vib_dim").get<std::size_t>());
    const auto& amps = doc.at("amplitudes");
    if (amps.size() != cutoffs.total_dim()) {
      throw std::invalid_argument("state JSON: expected " + std::to_string(cutoffs.total_dim()) +
                                  " amplitudes, got " + std::to_string(amps.size()));
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const auto& pair = amps[i];
      if (!pair.is_array() || pair.size() != 2) {
        throw std::invalid_argument("state JSON: amplitude " + std::to_string(i) +
                                    " is not an [re, im] pair");
      }
      v[static_cast<Eigen::Index>(i)] = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    return PureState(cutoffs, std::move(v));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("state JSON: ") + e.what());
  }
}

}  // namespace iontrap
