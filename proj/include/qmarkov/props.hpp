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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/state.hpp"

namespace qmarkov {

struct TrialOutcome {
    enum class Kind { Pass, Skip, Fail };
    Kind kind = Kind::Pass;
    std::string note;

    static TrialOutcome pass() { return {}; }
    static TrialOutcome skip(std::string why) { return {Kind::Skip, std::move(why)}; }
    static TrialOutcome fail(std::string witness) { return {Kind::Fail, std::move(witness)}; }
};

/// One randomized trial. Dimensions drawn by the trial never exceed max_dim.
using TrialFn = std::function<TrialOutcome(Rng &rng, int max_dim, const Tolerance &tol)>;

struct Suite {
    std::string name;
    std::string module;
    std::string statement;
    int max_dim = 4;
    TrialFn trial;
};

struct SuiteResult {
    std::string name;
    std::string module;
    int trials = 0;
    int passed = 0;
    int skipped = 0;
    int failed = 0;
    /// First failing trial and its witness.
    std::optional<int> failing_trial;
    std::string witness;
    /// Smallest dimension bound at which a failure was found again.
    std::optional<int> minimized_dim;
    std::string minimized_witness;

    bool ok() const { return failed == 0; }
    std::string to_json() const;
};

/// Every suite, grouped by module.
const std::vector<Suite> &suites();
/// Throws InvalidInput for an unknown name.
const Suite &find_suite(const std::string &name);

/// Trial t draws from a generator seeded by (seed, suite name, t). On the
/// first failure the trial is re-run at smaller dimension bounds to find a
/// smaller witness.
SuiteResult run_suite(const Suite &suite, int trials, std::uint64_t seed, const Tolerance &tol = {},
                      std::optional<int> max_dim = std::nullopt);
std::vector<SuiteResult> run_all(int trials, std::uint64_t seed, const Tolerance &tol = {});

/// Fixed-width table, one row per suite, failures followed by their witnesses.
std::string summary_table(const std::vector<SuiteResult> &results);

/// Generator seeded from the pieces, stable across platforms.
Rng derived_rng(std::uint64_t seed, const std::string &label, std::uint64_t index);

// Instance generators shared with the acceptance tests.

/// Unital CP map between arbitrary shapes (Stinespring form).
Channel random_cpu(Rng &rng, const AlgebraShape &domain, const AlgebraShape &codomain);
/// Random linear map with F(B*) = F(B)*.
Channel random_star_map(Rng &rng, const AlgebraShape &domain, const AlgebraShape &codomain);
/// Shape with one or two blocks and total dimension at most max_dim.
AlgebraShape random_shape(Rng &rng, int max_dim);

/// F: B -> A, omega on A, G: A -> B with G a CPU disintegration.
struct DisintegrationInstance {
    std::string family;
    Channel f;
    State omega;
    Channel g;
};

/// Families: unitary conjugation, block inclusion with a block-diagonal
/// state, embedded classical function.
DisintegrationInstance random_disintegration(Rng &rng, int max_dim, const Tolerance &tol = {});

}  // namespace qmarkov
