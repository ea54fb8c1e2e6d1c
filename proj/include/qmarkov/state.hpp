// Copyright 2026 The qmarkov Authors
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

#include "qmarkov/algebra.hpp"
#include "qmarkov/channel.hpp"
#include "qmarkov/tolerance.hpp"

namespace qmarkov {

enum class Side { Left, Right };

std::string_view side_name(Side s);

/// omega(A) = sum_x tr(rho_x A_x), with its support projection cached.
class State {
  public:
    /// Validates rho (PSD, unit trace) and computes the support. Throws
    /// InvalidState.
    explicit State(AlgElement density, const Tolerance &tol = {});

    const AlgebraShape &shape() const { return density_.shape(); }
    const AlgElement &density() const { return density_; }
    const AlgElement &support() const { return support_; }
    /// 1 - P.
    AlgElement support_complement() const;
    bool faithful() const;

    Complex operator()(const AlgElement &a) const;

    /// Normalized trace sum_x tr(A_x) / sum_x n_x.
    static State tracial(const AlgebraShape &shape);

  private:
    AlgElement density_;
    AlgElement support_;
};

/// Spectral projection of rho onto eigenvalues above rank_tol times the
/// largest eigenvalue over all blocks.
AlgElement support(const AlgElement &rho, const Tolerance &tol = {});
inline const AlgElement &support(const State &omega) { return omega.support(); }

/// Membership tests for the nullspaces: A P = 0 (right), P A = 0 (left).
struct NullspaceTest {
    Side side;
    const State &state;
    bool contains(const AlgElement &a, const Tolerance &tol = {}) const;
};

/// xi = omega∘F; its density is hs_adjoint(F)(rho). Throws PullbackNotPSD.
State pullback_state(const State &omega, const Channel &f, const Tolerance &tol = {});

/// Right: (F - G)(E_b) P = 0 on every basis element; left: P (F - G)(E_b) = 0.
PropertyReport ae_equal(const Channel &f, const Channel &g, const State &omega, Side side, const Tolerance &tol = {});

/// Right: F(E_a* E_b) P = F(E_a)* F(E_b) P on basis pairs; left with P in front.
PropertyReport ae_deterministic(const Channel &f, const State &omega, Side side, const Tolerance &tol = {});

/// Right: F(1) P = P; left: P F(1) = P.
PropertyReport ae_unital(const Channel &f, const State &omega, Side side, const Tolerance &tol = {});

/// f: B -> A, g: A -> C, xi a state on C. Hypothesis: g∘f is left
/// xi-a.e. deterministic. Parts "equation" P g(A f(B)) = P g(A) g(f(B)) and
/// "mirrored" P g(f(B) A) = P g(f(B)) g(A), both on basis pairs.
PropertyReport strict_positivity(const Channel &f, const Channel &g, const State &xi, const Tolerance &tol = {});

}  // namespace qmarkov
