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

#include "qmarkov/bayes.hpp"
#include "qmarkov/error.hpp"
#include "qmarkov/finstoch.hpp"
#include "qmarkov/props.hpp"

using namespace qmarkov;

namespace {

const AlgebraShape m2 = AlgebraShape::matrix(2);

ErrorKind kind_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no throw";
    return ErrorKind::InvalidInput;
}

StochasticMatrix<double> random_kernel(Rng &rng, int ny, int nx) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> e(static_cast<size_t>(ny * nx));
    for (int x = 0; x < nx; ++x) {
        double s = 0;
        for (int y = 0; y < ny; ++y) {
            s += e[static_cast<size_t>(y * nx + x)] = u(rng);
        }
        for (int y = 0; y < ny; ++y) {
            e[static_cast<size_t>(y * nx + x)] /= s;
        }
    }
    return StochasticMatrix<double>(ny, nx, e);
}

ProbVector<double> random_prob(Rng &rng, int n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> p(static_cast<size_t>(n));
    double s = 0;
    for (auto &v : p) {
        s += v = u(rng);
    }
    for (auto &v : p) {
        v /= s;
    }
    return ProbVector<double>(p);
}

double dist(const Channel &a, const Channel &b) { return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Bayes, UnitaryConjugationInvertsExactly) {
    Rng rng(1);
    ComplexMatrix u = random_unitary(rng, 3);
    Channel f = ad(u);
    State omega(random_density(rng, AlgebraShape::matrix(3), true));
    BayesProblem prob = BayesProblem::make(f, omega);
    BayesResult res = bayes_candidate(prob);
    EXPECT_LT(dist(res.g, ad(u.adjoint())), 1e-9);
    EXPECT_TRUE(res.bayes_left.passed());
    EXPECT_TRUE(res.bayes_right.passed());
    EXPECT_TRUE(res.cpu.passed());
}

TEST(Bayes, ClassicalEmbeddingMatchesBayesRule) {
    Rng rng(2);
    for (int t = 0; t < 10; ++t) {
        int nx = 1 + t % 4, ny = 1 + (t * 7) % 5;
        auto f = random_kernel(rng, ny, nx);
        auto p = random_prob(rng, nx);
        BayesProblem prob = BayesProblem::make(embed(f), embed_prob(p));
        BayesResult res = bayes_candidate(prob);
        EXPECT_LT(dist(res.g, embed(bayes_inverse(f, p))), 1e-9);
        EXPECT_TRUE(res.cpu.passed());
        // Petz agrees with the classical inverse too
        ASSERT_TRUE(petz_exists(prob).passed());
        EXPECT_LT(dist(petz_recovery(prob), embed(bayes_inverse(f, p))), 1e-9);
    }
}

TEST(Bayes, CandidateSatisfiesLeftConditionForCp) {
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        AlgebraShape a = random_shape(rng, 4), b = random_shape(rng, 4);
        Channel f = random_cpu(rng, b, a);
        State omega(random_density(rng, a, t % 2 == 0));
        BayesProblem prob = BayesProblem::make(f, omega);
        BayesResult res = bayes_candidate(prob);
        EXPECT_TRUE(res.bayes_left.passed()) << describe(res.bayes_left);
        EXPECT_TRUE(verify_bayes(f, omega, prob.xi, res.g, Side::Left).passed());
        EXPECT_TRUE(is_unital(res.g).passed());
    }
}

TEST(Bayes, WrongCandidateFails) {
    Rng rng(4);
    State omega(random_density(rng, m2, true));
    Channel f = ad(random_unitary(rng, 2));
    BayesProblem prob = BayesProblem::make(f, omega);
    PropertyReport r = verify_bayes(f, omega, prob.xi, identity_channel(m2), Side::Left);
    EXPECT_FALSE(r.passed());
    EXPECT_TRUE(r.witness);
}

TEST(Petz, UnitaryCase) {
    Rng rng(5);
    ComplexMatrix u = random_unitary(rng, 2);
    BayesProblem prob = BayesProblem::make(ad(u), State(random_density(rng, m2, true)));
    ASSERT_TRUE(petz_exists(prob).passed());
    EXPECT_LT(dist(petz_recovery(prob), ad(u.adjoint())), 1e-9);
}

TEST(Petz, NeedsFaithfulPullback) {
    ComplexMatrix pure = ComplexMatrix::Zero(2, 2);
    pure(0, 0) = 1;
    BayesProblem prob = BayesProblem::make(identity_channel(m2), State(AlgElement::from_matrix(pure)));
    EXPECT_EQ(kind_of([&] { petz_exists(prob); }), ErrorKind::SupportNotFull);
}

TEST(Petz, GenericCpuFailsCondition) {
    Rng rng(6);
    Channel f = random_cpu(rng, m2, AlgebraShape::matrix(3));
    BayesProblem prob = BayesProblem::make(f, State(random_density(rng, AlgebraShape::matrix(3), true)));
    PropertyReport r = petz_exists(prob);
    EXPECT_FALSE(r.passed());
    EXPECT_TRUE(r.witness);
}

TEST(Disintegration, RandomInstancesVerify) {
    Rng rng(7);
    for (int t = 0; t < 15; ++t) {
        DisintegrationInstance inst = random_disintegration(rng, 5);
        EXPECT_TRUE(verify_disintegration(inst.f, inst.omega, inst.g).passed()) << inst.family;
        ModularityReport chain = modularity_chain(inst.f, inst.omega, inst.g);
        EXPECT_FALSE(chain.violation()) << inst.family << ": " << describe(chain.summary());
    }
}

TEST(Disintegration, NotAnInverseFails) {
    Rng rng(8);
    ComplexMatrix u = random_unitary(rng, 2);
    State omega(random_density(rng, m2, true));
    // the identity does not undo a nontrivial conjugation
    PropertyReport r = verify_disintegration(ad(u), omega, identity_channel(m2));
    EXPECT_FALSE(r.passed());
}

TEST(ModularityChain, Preconditions) {
    State omega(AlgElement::from_matrix((ComplexMatrix(2, 2) << 0.7, 0, 0, 0.3).finished()));
    Channel t = transpose_channel(m2);
    ASSERT_TRUE(verify_disintegration(t, omega, t).passed());
    EXPECT_EQ(kind_of([&] { modularity_chain(t, omega, t); }), ErrorKind::PreconditionsUnmet);
    Rng rng(9);
    Channel u = ad(random_unitary(rng, 2));
    EXPECT_EQ(kind_of([&] { modularity_chain(u, omega, identity_channel(m2)); }), ErrorKind::PreconditionsUnmet);
}

TEST(CommutativeDisintegration, MatchesClassical) {
    auto f = StochasticMatrix<double>::from_function(2, {0, 0, 1});
    ProbVector<double> p({0.5, 0.3, 0.2});
    Channel F = embed(f);
    State omega = embed_prob(p);
    Channel g = commutative_disintegration(F, omega);
    EXPECT_LT(dist(g, embed(disintegration(f, p))), 1e-12);
    EXPECT_TRUE(verify_disintegration(F, omega, g).passed());
}

TEST(CommutativeDisintegration, Errors) {
    Rng rng(10);
    State omega(random_density(rng, m2, true));
    EXPECT_EQ(kind_of([&] { commutative_disintegration(identity_channel(m2), omega); }), ErrorKind::NotCommutative);
    auto noisy = random_kernel(rng, 2, 3);
    auto p = random_prob(rng, 3);
    EXPECT_EQ(kind_of([&] { commutative_disintegration(embed(noisy), embed_prob(p)); }),
              ErrorKind::NotAeDeterministic);
}
