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

#include <gtest/gtest.h>

#include "qmarkov/error.hpp"
#include "qmarkov/finstoch.hpp"

using namespace qmarkov;

namespace {

using Q = Rational;

Q r(int p, int q) { return Q(p) / Q(q); }

// columns: x0 -> y0, x1 -> half/half, x2 -> y1
StochasticMatrix<Q> noisy() { return StochasticMatrix<Q>(2, 3, {1, r(1, 2), 0, 0, r(1, 2), 1}); }

ProbVector<Q> p3() { return ProbVector<Q>({r(1, 2), r(1, 3), r(1, 6)}); }

}  // namespace

TEST(Stochastic, Validation) {
    EXPECT_TRUE(noisy().is_stochastic());
    EXPECT_FALSE(noisy().is_deterministic());
    EXPECT_FALSE(StochasticMatrix<Q>(2, 1, {r(1, 2), r(1, 3)}).is_stochastic());
    EXPECT_FALSE(StochasticMatrix<Q>(2, 1, {r(3, 2), r(-1, 2)}).is_stochastic());
    EXPECT_THROW(StochasticMatrix<Q>(2, 2, {1, 0, 1}), Error);
    EXPECT_TRUE(p3().is_probability());
    EXPECT_FALSE(ProbVector<Q>({r(1, 2), r(1, 3)}).is_probability());
    EXPECT_THROW(StochasticMatrix<Q>::from_function(2, {0, 2}), Error);
}

TEST(Stochastic, PushAndCompose) {
    ProbVector<Q> q = push(noisy(), p3());
    EXPECT_EQ(q[0], r(2, 3));
    EXPECT_EQ(q[1], r(1, 3));
    auto swap = StochasticMatrix<Q>::from_function(2, {1, 0});
    auto sn = compose(swap, noisy());
    EXPECT_EQ(sn(0, 0), Q(0));
    EXPECT_EQ(sn(1, 0), Q(1));
    EXPECT_EQ(sn(0, 1), r(1, 2));
    EXPECT_THROW(compose(noisy(), noisy()), Error);
}

TEST(Stochastic, ProductOrdersFirstIndexMajor) {
    auto f = StochasticMatrix<Q>::from_function(2, {1, 0});
    auto id = StochasticMatrix<Q>::identity(3);
    auto fp = product(f, id);
    EXPECT_EQ(fp.rows(), 6);
    EXPECT_EQ(fp.cols(), 6);
    // (x, x') = (0, 2) goes to (y, y') = (1, 2)
    EXPECT_EQ(fp(1 * 3 + 2, 0 * 3 + 2), Q(1));
    EXPECT_TRUE(fp.is_deterministic());
}

TEST(Bayes, HandComputedInverse) {
    auto g = bayes_inverse(noisy(), p3());
    // g(x|y) = f(y|x) p(x) / q(y), q = (2/3, 1/3)
    EXPECT_EQ(g(0, 0), r(3, 4));
    EXPECT_EQ(g(1, 0), r(1, 4));
    EXPECT_EQ(g(2, 0), Q(0));
    EXPECT_EQ(g(0, 1), Q(0));
    EXPECT_EQ(g(1, 1), r(1, 2));
    EXPECT_EQ(g(2, 1), r(1, 2));
    EXPECT_TRUE(g.is_stochastic());
    PropertyReport d = verify_bayes_diagram(noisy(), p3(), g);
    EXPECT_TRUE(d.passed());
    EXPECT_EQ(d.tolerance, 0.0);
}

TEST(Bayes, NullColumnsAreUniform) {
    ProbVector<Q> p({1, 0, 0});
    auto f = StochasticMatrix<Q>::from_function(2, {0, 0, 1});
    auto g = bayes_inverse(f, p);
    for (int x = 0; x < 3; ++x) {
        EXPECT_EQ(g(x, 1), r(1, 3));
    }
    EXPECT_EQ(g(0, 0), Q(1));
    EXPECT_TRUE(verify_bayes_diagram(f, p, g).passed());
}

TEST(Bayes, DiagramCatchesWrongInverse) {
    auto wrong = StochasticMatrix<Q>(3, 2, {r(1, 2), 0, r(1, 2), r(1, 2), 0, r(1, 2)});
    PropertyReport d = verify_bayes_diagram(noisy(), p3(), wrong);
    EXPECT_FALSE(d.passed());
    EXPECT_TRUE(d.witness);
}

TEST(AlmostEverywhere, Classical) {
    ProbVector<Q> p({r(1, 2), r(1, 2), 0});
    // differs from the identity only on the null point
    auto h = StochasticMatrix<Q>(3, 3, {1, 0, r(1, 3), 0, 1, r(1, 3), 0, 0, r(1, 3)});
    EXPECT_TRUE(ae_equal(StochasticMatrix<Q>::identity(3), h, p).passed());
    EXPECT_FALSE(ae_equal(StochasticMatrix<Q>::identity(3), h, ProbVector<Q>::uniform(3)).passed());
    EXPECT_TRUE(is_ae_deterministic(h, p).passed());
    EXPECT_FALSE(is_ae_deterministic(h, ProbVector<Q>::uniform(3)).passed());
    EXPECT_TRUE(is_ae_unital(h, p).passed());
}

TEST(Disintegration, DeterministicKernel) {
    auto f = StochasticMatrix<Q>::from_function(2, {0, 0, 1});
    auto g = disintegration(f, p3());
    EXPECT_EQ(g(0, 0), r(3, 5));
    EXPECT_EQ(g(1, 0), r(2, 5));
    EXPECT_EQ(g(2, 1), Q(1));
    EXPECT_TRUE(verify_disintegration(f, p3(), g).passed());
    EXPECT_EQ(compose(f, g).entries(), StochasticMatrix<Q>::identity(2).entries());
    EXPECT_THROW(disintegration(noisy(), p3()), Error);
}

TEST(Embed, Functorial) {
    auto f = noisy();
    auto swap = StochasticMatrix<Q>::from_function(2, {1, 0});
    Channel lhs = embed(compose(swap, f));
    Channel rhs = compose(embed(f), embed(swap));
    EXPECT_LT((lhs.matrix() - rhs.matrix()).norm(), 1e-14);
    EXPECT_TRUE(is_cpu(embed(f)).passed());
    EXPECT_TRUE(is_deterministic(embed(swap)).passed());
    State s = embed_prob(p3());
    EXPECT_NEAR(s.density().block(1)(0, 0).real(), 1.0 / 3, 1e-15);
}

TEST(Double, ToleranceApplies) {
    auto f = to_double(noisy());
    auto p = to_double(p3());
    auto g = bayes_inverse(f, p);
    EXPECT_NEAR(g(0, 0), 0.75, 1e-15);
    EXPECT_TRUE(verify_bayes_diagram(f, p, g).passed());
}
