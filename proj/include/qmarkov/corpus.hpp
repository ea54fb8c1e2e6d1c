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

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/finstoch.hpp"
#include "qmarkov/state.hpp"

namespace qmarkov {

struct Check {
    std::string desc;
    bool pass = false;
    std::string detail;
};

struct FixtureReport {
    std::string name;
    std::string location;
    std::vector<Check> checks;

    bool passed() const;
    std::string to_json() const;
};

struct RunOptions {
    Tolerance tol{};
    std::uint64_t seed = 0;
    int trials = kDefaultTrials;
};

struct Fixture {
    std::string name;
    std::string location;
    std::function<FixtureReport(const RunOptions &)> run;
};

/// All fixtures in a fixed order.
const std::vector<Fixture> &registry();
/// Throws UnknownFixture.
const Fixture &find_fixture(const std::string &name);

Fixture hamming74();
/// A single gamma; the registry entry runs 0, 0.25, 0.5 and 1.
Fixture knill_laflamme(double gamma);
/// One of the named counterexamples. Throws UnknownFixture.
Fixture counterexample(const std::string &name);
const std::vector<std::string> &counterexample_names();

// Builders shared with the tests.

/// Hamming (7,4) over Z2. Words are bit vectors, first entry first.
struct Hamming74 {
    using Word = std::vector<int>;

    std::array<std::array<int, 4>, 3> q{};
    std::array<std::array<int, 7>, 3> h{};  // [I3 | Q]
    std::array<std::array<int, 4>, 7> m{};  // [Q ; I4]

    Word encode(const Word &x) const;
    Word syndrome(const Word &y) const;
    /// Correct at most one flipped bit, then read off the message.
    Word recover(const Word &y) const;

    static Word bits(int value, int width);
    static int value(const Word &w);
    static int distance(const Word &a, const Word &b);

    /// Single-error channel X -> Y: 13/20 on the code word, 1/20 on each of
    /// its seven neighbours.
    StochasticMatrix<Rational> error_kernel() const;
    /// Deterministic kernel Y -> X of recover().
    StochasticMatrix<Rational> recovery_kernel() const;
};

Hamming74 make_hamming74();

/// Three-qubit phase-flip code in the Heisenberg picture.
struct KnillLaflamme {
    double gamma = 0;
    ComplexMatrix v;                      // 8x2 encoding isometry
    std::vector<ComplexMatrix> errors;    // E_0..E_3
    std::vector<ComplexMatrix> recovery;  // R_0..R_3
    Channel e;                            // M8 -> M8, B -> sum E_i* B E_i
    Channel r;                            // M8 -> M8, B -> sum R_i* B R_i
    Channel f;                            // M8 -> M2, error: V* E(B) V
    Channel g;                            // M2 -> M8, recovery: R(V A V*)
};

KnillLaflamme make_knill_laflamme(double gamma);

/// The conditional map of the singlet state: B -> [[b22, -b12], [-b21, b11]]
/// solved from omega(A (x) B) = omega_A(A F(B)). Residual and nullity of the
/// linear system are returned alongside.
struct EprSolution {
    Channel f;
    double residual = 0;
    int nullity = 0;
};

EprSolution solve_epr_conditional(const Tolerance &tol = {});

}  // namespace qmarkov
