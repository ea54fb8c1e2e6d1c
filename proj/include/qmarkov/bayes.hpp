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

#include <string>
#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/state.hpp"

namespace qmarkov {

/// F: B -> A, omega on A, xi = omega∘F on B.
struct BayesProblem {
    Channel f;
    State omega;
    State xi;

    /// Computes xi by pullback. Throws PullbackNotPSD.
    static BayesProblem make(const Channel &f, const State &omega, const Tolerance &tol = {});
};

struct BayesResult {
    Channel g;
    PropertyReport bayes_left;
    PropertyReport bayes_right;
    PropertyReport cpu;
    std::vector<std::string> notes;

    /// The Bayes condition in its standard (left) form.
    bool bayes_ok() const { return bayes_left.passed(); }
    bool cpu_ok() const { return cpu.passed(); }
};

/// G(A) = pinv(sigma) F*(rho A) + tau(A) (1 - P_xi), tau the normalized trace.
BayesResult bayes_candidate(const BayesProblem &prob, const Tolerance &tol = {});

/// Left: xi(G(E_a) E_b) = omega(E_a F(E_b)); right: xi(E_b G(E_a)) = omega(F(E_b) E_a).
PropertyReport verify_bayes(const Channel &f, const State &omega, const State &xi, const Channel &g, Side side,
                            const Tolerance &tol = {});

/// F(sigma B) rho = rho F(B sigma) on every basis B. Throws SupportNotFull
/// unless xi is faithful.
PropertyReport petz_exists(const BayesProblem &prob, const Tolerance &tol = {});
/// A -> sqrt(pinv sigma) F*(sqrt(rho) A sqrt(rho)) sqrt(pinv sigma).
Channel petz_recovery(const BayesProblem &prob, const Tolerance &tol = {});

/// (i) xi(G(E_a)) = omega(E_a) on the basis of A; (ii) G∘F is right
/// xi-a.e. equal to the identity of B.
PropertyReport verify_disintegration(const Channel &f, const State &omega, const Channel &g,
                                     const Tolerance &tol = {});

/// Disintegration of an a.e. deterministic F into a commutative algebra,
/// with the tracial state on blocks that carry no mass. Throws
/// NotCommutative, NotAeDeterministic or NonscalarImageBlock.
Channel commutative_disintegration(const Channel &f, const State &omega, const Tolerance &tol = {});

struct ModularityReport {
    PropertyReport bayes;
    PropertyReport ae_det;

    bool violation() const { return !bayes.passed() || !ae_det.passed(); }
    PropertyReport summary() const;
};

/// Requires a passing disintegration with F and G both CPU, otherwise
/// throws PreconditionsUnmet. Then F must be right omega-a.e. deterministic
/// and G a left Bayes map; a failure of either is a violation.
ModularityReport modularity_chain(const Channel &f, const State &omega, const Channel &g, const Tolerance &tol = {});

}  // namespace qmarkov
