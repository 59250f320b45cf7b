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

#pragma once

// Pure states of the composite system  field (x) vibration (x) two-level ion
// on a truncated Fock basis.
//
// Flattening convention, used by every module and by the JSON format:
//
//     index(n_f, m_v, q) = (n_f * vib_dim + m_v) * 2 + q,   q = 0 -> |g>, 1 -> |e>
//
// Bipartite (qubit measured out) states use index(n_f, m_v) = n_f * vib_dim + m_v.

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace iontrap {

using Complex = std::complex<double>;

/// Norm tolerance for every state returned by a public operation.
inline constexpr double kNormTolerance = 1e-12;

enum class Qubit : int { g = 0, e = 1 };

std::string to_string(Qubit q);
Qubit parse_qubit(const std::string& text);

class FockCutoffs {
 public:
  FockCutoffs(std::size_t field_dim, std::size_t vib_dim);

  std::size_t field_dim() const { return field_dim_; }
  std::size_t vib_dim() const { return vib_dim_; }
  std::size_t pair_dim() const { return field_dim_ * vib_dim_; }
  std::size_t total_dim() const { return field_dim_ * vib_dim_ * 2; }

  bool contains(long n_f, long m_v) const {
    return n_f >= 0 && m_v >= 0 && static_cast<std::size_t>(n_f) < field_dim_ &&
           static_cast<std::size_t>(m_v) < vib_dim_;
  }

  std::size_t index(std::size_t n_f, std::size_t m_v, Qubit q) const {
    return (n_f * vib_dim_ + m_v) * 2 + static_cast<std::size_t>(q);
  }
  std::size_t pair_index(std::size_t n_f, std::size_t m_v) const {
    return n_f * vib_dim_ + m_v;
  }

  struct Labels {
    std::size_t n_f;
    std::size_t m_v;
    Qubit q;
  };
  Labels labels(std::size_t index) const;

  friend bool operator==(const FockCutoffs&, const FockCutoffs&) = default;

 private:
  std::size_t field_dim_;
  std::size_t vib_dim_;
};

/// "|n,m,q>" label used in diagnostics.
std::string basis_label(const FockCutoffs& cutoffs, std::size_t index);

class PureState {
 public:
  /// Takes a vector that must already be normalized to kNormTolerance.
  PureState(FockCutoffs cutoffs, Eigen::VectorXcd amplitudes);

  /// Normalizes `amplitudes`; throws on a zero vector.
  static PureState normalized(FockCutoffs cutoffs, Eigen::VectorXcd amplitudes);

  const FockCutoffs& cutoffs() const { return cutoffs_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t n_f, std::size_t m_v, Qubit q) const {
    return amplitudes_[static_cast<Eigen::Index>(cutoffs_.index(n_f, m_v, q))];
  }

 private:
  FockCutoffs cutoffs_;
  Eigen::VectorXcd amplitudes_;
};

class BipartiteState {
 public:
  BipartiteState(FockCutoffs cutoffs, Eigen::VectorXcd amplitudes);
  static BipartiteState normalized(FockCutoffs cutoffs, Eigen::VectorXcd amplitudes);

  const FockCutoffs& cutoffs() const { return cutoffs_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t n_f, std::size_t m_v) const {
    return amplitudes_[static_cast<Eigen::Index>(cutoffs_.pair_index(n_f, m_v))];
  }

  /// Amplitudes as a field_dim x vib_dim matrix (row = field level).
  Eigen::MatrixXcd as_matrix() const;

 private:
  FockCutoffs cutoffs_;
  Eigen::VectorXcd amplitudes_;
};

PureState basis_state(const FockCutoffs& cutoffs, long n_f, long m_v, Qubit q);

/// Normalized linear combination of states sharing the same cutoffs.
PureState superpose(const std::vector<std::pair<Complex, PureState>>& terms);

/// <a|b>, conjugate-linear in `a`.
Complex inner_product(const PureState& a, const PureState& b);
Complex inner_product(const BipartiteState& a, const BipartiteState& b);

/// JSON document {"field_dim", "vib_dim", "amplitudes": [[re, im], ...]}.
std::string to_json(const PureState& state, int indent = -1);
PureState pure_state_from_json(const std::string& text);

}  // namespace iontrap
