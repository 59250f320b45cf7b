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

#include "iontrap/propagation.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "iontrap/errors.hpp"

namespace iontrap {
namespace {

// Amplitudes below this probability are treated as unpopulated when
// checking the leakage precondition of the closed-form propagators.
constexpr double kPopulationFloor = 1e-24;

void check_time(double t, const char* who) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << who << ": time must be finite and non-negative, got " << t;
    throw std::invalid_argument(msg.str());
  }
}

struct Partner {
  long n_f;
  long m_v;
  double rabi_factor;  // sqrt of the ladder-element product
};

// Rotates every sideband doublet. `partner_of_excited(n, m)` gives the ground
// state coupled to |n,m,e>, `partner_of_ground(n, m)` the excited state
// coupled to |n,m,g>; either returns nullopt when no coupling exists in the
// untruncated space.
template <typename ExcitedPartner, typename GroundPartner>
PureState rotate_doublets(const SystemParams& params, const PureState& state, double t,
                          ExcitedPartner partner_of_excited, GroundPartner partner_of_ground,
                          const char* who) {
  check_time(t, who);
  params.validate();
  const FockCutoffs& c = state.cutoffs();
  const Eigen::VectorXcd& in = state.amplitudes();
  Eigen::VectorXcd out = in;
  const Complex minus_i(0.0, -1.0);

  auto populated = [&](std::size_t idx) {
    return std::norm(in[static_cast<Eigen::Index>(idx)]) > kPopulationFloor;
  };
  auto leak = [&](std::size_t idx) {
    throw LeakageError(std::string(who) + ": populated state " + basis_label(c, idx) +
                       " couples beyond the Fock cutoffs");
  };
  auto rotate = [&](std::size_t ie, const Partner& p) {
    const std::size_t ig = c.index(static_cast<std::size_t>(p.n_f),
                                   static_cast<std::size_t>(p.m_v), Qubit::g);
    const double angle = params.eta_g() * p.rabi_factor * t;
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    const Complex ae = in[static_cast<Eigen::Index>(ie)];
    const Complex ag = in[static_cast<Eigen::Index>(ig)];
    out[static_cast<Eigen::Index>(ie)] = cs * ae + minus_i * sn * ag;
    out[static_cast<Eigen::Index>(ig)] = minus_i * sn * ae + cs * ag;
  };

  for (std::size_t n = 0; n < c.field_dim(); ++n) {
    for (std::size_t m = 0; m < c.vib_dim(); ++m) {
      const std::size_t ie = c.index(n, m, Qubit::e);
      if (const std::optional<Partner> p = partner_of_excited(static_cast<long>(n),
                                                              static_cast<long>(m))) {
        if (!c.contains(p->n_f, p->m_v)) {
          if (populated(ie)) leak(ie);
        } else {
          rotate(ie, *p);
        }
      }
      // Ground states whose excited partner is truncated away stay put, but
      // only if they carry no population.
      const std::size_t ig = c.index(n, m, Qubit::g);
      if (const std::optional<Partner> p = partner_of_ground(static_cast<long>(n),
                                                             static_cast<long>(m))) {
        if (!c.contains(p->n_f, p->m_v) && populated(ig)) leak(ig);
      }
    }
  }
  return PureState(c, std::move(out));
}

}  // namespace

LeakageReport measure_leakage(const PureState& state) {
  const FockCutoffs& c = state.cutoffs();
  LeakageReport report;
  for (std::size_t n = 0; n < c.field_dim(); ++n) {
    for (std::size_t m = 0; m < c.vib_dim(); ++m) {
      for (const Qubit q : {Qubit::g, Qubit::e}) {
        const double p = std::norm(state.amplitude(n, m, q));
        if (n + 1 == c.field_dim()) report.field_top += p;
        if (m + 1 == c.vib_dim()) report.vib_top += p;
      }
    }
  }
  return report;
}

SpectralPropagator::SpectralPropagator(const OperatorMatrix& hamiltonian)
    : cutoffs_(hamiltonian.cutoffs()) {
  if (!hamiltonian.is_hermitian()) {
    throw std::invalid_argument("SpectralPropagator: Hamiltonian is not Hermitian");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.entries());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("SpectralPropagator: eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

PureState SpectralPropagator::evolve(const PureState& state, double t) const {
  check_time(t, "numeric_propagate");
  if (!(state.cutoffs() == cutoffs_)) {
    throw std::invalid_argument("numeric_propagate: state and Hamiltonian cutoffs differ");
  }
  const Eigen::VectorXcd phases =
      (eigenvalues_.cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
  Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * state.amplitudes();
  coeffs.array() *= phases.array();
  return PureState(cutoffs_, eigenvectors_ * coeffs);
}

Eigen::MatrixXcd SpectralPropagator::unitary(double t) const {
  const Eigen::VectorXcd phases =
      (eigenvalues_.cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

NumericPropagation numeric_propagate(const OperatorMatrix& hamiltonian, const PureState& state,
                                     double t) {
  check_time(t, "numeric_propagate");
  const SpectralPropagator propagator(hamiltonian);
  PureState evolved = propagator.evolve(state, t);
  const LeakageReport leakage = measure_leakage(evolved);
  return {std::move(evolved), leakage};
}

PureState analytic_red_propagate(const SystemParams& params, const PureState& state, double t) {
  // sigma- a' b' : |n,m,e> -> |n+1,m+1,g>, element sqrt((n+1)(m+1)).
  auto excited = [](long n, long m) -> std::optional<Partner> {
    return Partner{n + 1, m + 1, std::sqrt(static_cast<double>((n + 1) * (m + 1)))};
  };
  auto ground = [](long n, long m) -> std::optional<Partner> {
    if (n == 0 || m == 0) return std::nullopt;
    return Partner{n - 1, m - 1, 0.0};
  };
  return rotate_doublets(params, state, t, excited, ground, "analytic_red_propagate");
}

PureState analytic_blue_propagate(const SystemParams& params, const PureState& state, double t) {
  // sigma- a b' : |n,m,e> -> |n+1,m-1,g>, element sqrt((n+1) m).
  auto excited = [](long n, long m) -> std::optional<Partner> {
    if (m == 0) return std::nullopt;
    return Partner{n + 1, m - 1, std::sqrt(static_cast<double>((n + 1) * m))};
  };
  auto ground = [](long n, long m) -> std::optional<Partner> {
    if (n == 0) return std::nullopt;
    return Partner{n - 1, m + 1, 0.0};
  };
  return rotate_doublets(params, state, t, excited, ground, "analytic_blue_propagate");
}

PureState to_interaction_picture(const SystemParams& params, const PureState& state, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("to_interaction_picture: non-finite time");
  const FockCutoffs& c = state.cutoffs();
  Eigen::VectorXcd out = state.amplitudes();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out[i] *= std::exp(Complex(0.0, free_energy(params, c.labels(static_cast<std::size_t>(i))) * t));
  }
  return PureState(state.cutoffs(), std::move(out));
}

PureState propagate(const PropagatorSpec& spec, const PureState& state) {
  switch (spec.kind) {
    case PropagatorKind::analytic_red:
      return analytic_red_propagate(spec.params, state, spec.time);
    case PropagatorKind::analytic_blue:
      return analytic_blue_propagate(spec.params, state, spec.time);
    case PropagatorKind::numeric:
      if (!spec.hamiltonian) {
        throw std::invalid_argument("propagate: numeric kind requires a Hamiltonian");
      }
      return numeric_propagate(*spec.hamiltonian, state, spec.time).state;
  }
  throw std::invalid_argument("propagate: unknown propagator kind");
}

}  // namespace iontrap
