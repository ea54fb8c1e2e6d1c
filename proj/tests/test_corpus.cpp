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

#include <set>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qmarkov/corpus.hpp"
#include "qmarkov/error.hpp"

using namespace qmarkov;

namespace {

std::string failures(const FixtureReport &r) {
    std::string out;
    for (const auto &c : r.checks) {
        if (!c.pass) {
            out += c.desc + " (" + c.detail + ")\n";
        }
    }
    return out;
}

}  // namespace

TEST(Registry, NamesAreUniqueAndOrdered) {
    const auto &reg = registry();
    ASSERT_EQ(reg.size(), 2 + counterexample_names().size());
    EXPECT_EQ(reg[0].name, "hamming74");
    EXPECT_EQ(reg[1].name, "knill-laflamme");
    std::set<std::string> names;
    for (const auto &fx : reg) {
        EXPECT_TRUE(names.insert(fx.name).second) << fx.name;
        EXPECT_FALSE(fx.location.empty());
    }
    try {
        find_fixture("nosuch");
        FAIL() << "no throw";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownFixture);
    }
    EXPECT_THROW(counterexample("nosuch"), Error);
}

TEST(Registry, EveryFixturePasses) {
    for (const auto &fx : registry()) {
        FixtureReport r = fx.run(RunOptions{});
        EXPECT_TRUE(r.passed()) << fx.name << ":\n" << failures(r);
        EXPECT_FALSE(r.checks.empty());
        auto j = nlohmann::json::parse(r.to_json());
        EXPECT_EQ(j["name"], fx.name);
        EXPECT_EQ(j["checks"].size(), r.checks.size());
    }
}

TEST(Hamming, ParityAndDecoding) {
    Hamming74 h = make_hamming74();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 4; ++j) {
            int s = 0;
            for (int k = 0; k < 7; ++k) {
                s += h.h[i][k] * h.m[k][j];
            }
            EXPECT_EQ(s % 2, 0);
        }
    }
    int corrected = 0;
    for (int v = 0; v < 16; ++v) {
        auto x = Hamming74::bits(v, 4);
        auto y = h.encode(x);
        EXPECT_EQ(Hamming74::value(h.syndrome(y)), 0);
        corrected += h.recover(y) == x;
        for (int k = 0; k < 7; ++k) {
            auto e = y;
            e[static_cast<size_t>(k)] ^= 1;
            EXPECT_EQ(Hamming74::distance(e, y), 1);
            corrected += h.recover(e) == x;
        }
    }
    EXPECT_EQ(corrected, 128);
    // minimum distance 3
    int dmin = 7;
    for (int a = 0; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b)
            dmin = std::min(dmin, Hamming74::distance(h.encode(Hamming74::bits(a, 4)), h.encode(Hamming74::bits(b, 4))));
    EXPECT_EQ(dmin, 3);
}

TEST(Hamming, KernelsRecoverExactly) {
    Hamming74 h = make_hamming74();
    auto e = h.error_kernel();
    auto r = h.recovery_kernel();
    EXPECT_TRUE(e.is_stochastic());
    EXPECT_TRUE(r.is_deterministic());
    EXPECT_EQ(compose(r, e).entries(), StochasticMatrix<Rational>::identity(16).entries());
}

TEST(KnillLaflamme, RecoveryInvertsError) {
    for (double gamma : {0.0, 0.25, 0.5, 1.0}) {
        KnillLaflamme kl = make_knill_laflamme(gamma);
        ComplexMatrix sum = ComplexMatrix::Zero(8, 8);
        for (const auto &r : kl.recovery) {
            sum += r.adjoint() * r;
        }
        EXPECT_LT((sum - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((kl.v.adjoint() * kl.v - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
        Channel fg = compose(kl.f, kl.g);
        EXPECT_LT((fg.matrix() - identity_channel(AlgebraShape::matrix(2)).matrix()).cwiseAbs().maxCoeff(), 1e-9)
            << gamma;
        EXPECT_TRUE(is_deterministic(kl.g).passed()) << gamma;
        EXPECT_TRUE(is_cpu(kl.f).passed()) << gamma;
    }
}

TEST(Epr, ConditionalIsTheFlip) {
    EprSolution s = solve_epr_conditional();
    EXPECT_EQ(s.nullity, 0);
    EXPECT_LT(s.residual, 1e-12);
    Rng rng(1);
    AlgElement b = random_element(rng, AlgebraShape::matrix(2));
    const ComplexMatrix &m = b.block(0);
    ComplexMatrix expected(2, 2);
    expected << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    EXPECT_LT((apply(s.f, b).block(0) - expected).norm(), 1e-9);
    std::vector<double> spec = choi_spectrum(s.f);
    ASSERT_EQ(spec.size(), 4u);
    EXPECT_NEAR(spec[0], 1, 1e-9);
    EXPECT_NEAR(spec[2], 1, 1e-9);
    EXPECT_NEAR(spec[3], -1, 1e-9);
    EXPECT_FALSE(is_cp(s.f).passed());
    EXPECT_TRUE(is_unital(s.f).passed());
    EXPECT_TRUE(is_positive_sampled(s.f, 256, 0).passed());
}

TEST(Counterexamples, IndividuallyRunnable) {
    for (const auto &name : counterexample_names()) {
        Fixture fx = counterexample(name);
        EXPECT_EQ(fx.name, name);
        RunOptions opt;
        opt.seed = 17;
        EXPECT_TRUE(fx.run(opt).passed()) << name;
    }
}
