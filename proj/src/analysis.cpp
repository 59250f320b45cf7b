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

#include "iontrap/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace iontrap {
namespace {

constexpr double kEigenvalueFloor = -1e-10;

}  // namespace

ReducedDensity::ReducedDensity(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("ReducedDensity: matrix must be square and non-empty");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("ReducedDensity: matrix is not Hermitian");
  }
  const Complex trace = entries_.trace();
  if (std::abs(trace.real() - 1.0) > 1e-12 || std::abs(trace.imag()) > 1e-12) {
    std::ostringstream msg;
    msg << "ReducedDensity: trace " << trace.real() << " differs from 1";
    throw std::invalid_argument(msg.str());
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_,
                                                               Eigen::EigenvaluesOnly);
  eigenvalues_ = solver.eigenvalues();
  if (eigenvalues_.minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("ReducedDensity: matrix has a negative eigenvalue");
  }
  eigenvalues_ = eigenvalues_.cwiseMax(0.0);
}

double fidelity(const BipartiteState& a, const BipartiteState& b) {
  return std::norm(inner_product(a, b));
}

ReducedDensity partial_trace(const BipartiteState& state, Subsystem keep) {
  const Eigen::MatrixXcd psi = state.as_matrix();  // rows: field, cols: vibration
  Eigen::MatrixXcd rho = keep == Subsystem::field ? Eigen::MatrixXcd(psi * psi.adjoint())
                                                  : Eigen::MatrixXcd(psi.transpose() * psi.conjugate());
  // Exact Hermiticity; the products above are Hermitian up to rounding.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return ReducedDensity(std::move(rho));
}

double von_neumann_entropy(const ReducedDensity& rho) {
  double s = 0.0;
  for (const double lambda : rho.eigenvalues()) {
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

double negativity(const BipartiteState& state) {
  const FockCutoffs& c = state.cutoffs();
  const auto nf = static_cast<Eigen::Index>(c.field_dim());
  const auto nv = static_cast<Eigen::Index>(c.vib_dim());
  const Eigen::MatrixXcd psi = state.as_matrix();
  // rho^{T_f}[(n,m),(n',m')] = psi(n',m) conj(psi(n,m'))
  Eigen::MatrixXcd pt(nf * nv, nf * nv);
  for (Eigen::Index n = 0; n < nf; ++n) {
    for (Eigen::Index m = 0; m < nv; ++m) {
      for (Eigen::Index n2 = 0; n2 < nf; ++n2) {
        for (Eigen::Index m2 = 0; m2 < nv; ++m2) {
          pt(n * nv + m, n2 * nv + m2) = psi(n2, m) * std::conj(psi(n, m2));
        }
      }
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = solver.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, 0.5 * (trace_norm - 1.0));
}

double expectation(const OperatorMatrix& op, const PureState& state) {
  return state.amplitudes().dot(op.apply(state)).real();
}

Occupations mean_occupations(const PureState& state) {
  Occupations occ;
  const FockCutoffs& c = state.cutoffs();
  for (std::size_t i = 0; i < c.total_dim(); ++i) {
    const double p = std::norm(state.amplitudes()[static_cast<Eigen::Index>(i)]);
    const auto l = c.labels(i);
    occ.field += p * static_cast<double>(l.n_f);
    occ.vibration += p * static_cast<double>(l.m_v);
    if (l.q == Qubit::e) occ.excited += p;
  }
  return occ;
}

}  // namespace iontrap
