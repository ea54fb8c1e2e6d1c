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

#include "qmarkov/channel.hpp"
#include "qmarkov/error.hpp"

using namespace qmarkov;

namespace {

const AlgebraShape m2 = AlgebraShape::matrix(2);

// B -> p B + (1 - p) tr(B)/2 1 on M2. Choi eigenvalues (1 + 3p)/2 once and
// (1 - p)/2 three times.
Channel depolarizing(double p) {
    return from_function(m2, m2, [p](const AlgElement &b) {
        AlgElement out = b;
        out *= p;
        out += AlgElement::identity(m2) * ((1 - p) * trace(b) / 2.0);
        return out;
    });
}

Complex hs(const AlgElement &a, const AlgElement &b) { return trace(mul(adjoint(a), b)); }

}  // namespace

TEST(Channel, ApplyMatchesKrausFormula) {
    Rng rng(1);
    ComplexMatrix k1 = random_gaussian(rng, 3, 2), k2 = random_gaussian(rng, 3, 2);
    Channel f = kraus_channel(AlgebraShape::matrix(3), m2, {k1, k2});
    AlgElement b = random_element(rng, AlgebraShape::matrix(3));
    ComplexMatrix expected = k1.adjoint() * b.block(0) * k1 + k2.adjoint() * b.block(0) * k2;
    EXPECT_LT((apply(f, b).block(0) - expected).norm(), 1e-12);
    EXPECT_TRUE(is_cp(f).passed());
}

TEST(Channel, ComposeIsFAfterG) {
    Rng rng(2);
    AlgebraShape a({1, 2}), b({2}), c({3});
    Channel g(a, b, random_gaussian(rng, b.coord_dim(), a.coord_dim()));
    Channel f(b, c, random_gaussian(rng, c.coord_dim(), b.coord_dim()));
    AlgElement x = random_element(rng, a);
    EXPECT_TRUE(approx_equal(apply(compose(f, g), x), apply(f, apply(g, x))));
    EXPECT_THROW(compose(g, f), Error);
}

TEST(Channel, HsAdjointPairing) {
    Rng rng(3);
    AlgebraShape a({1, 2}), b({3});
    Channel f(a, b, random_gaussian(rng, b.coord_dim(), a.coord_dim()));
    Channel fs = hs_adjoint(f);
    EXPECT_EQ(fs.domain(), b);
    AlgElement x = random_element(rng, b), y = random_element(rng, a);
    EXPECT_LT(std::abs(hs(x, apply(f, y)) - hs(apply(fs, x), y)), 1e-10);
}

TEST(Channel, TensorActsFactorwise) {
    Rng rng(4);
    Channel f = depolarizing(0.3);
    Channel g = transpose_channel(AlgebraShape({1, 2}));
    AlgElement a = random_element(rng, m2), b = random_element(rng, AlgebraShape({1, 2}));
    EXPECT_TRUE(approx_equal(apply(tensor(f, g), tensor_elem(a, b)), tensor_elem(apply(f, a), apply(g, b))));
}

TEST(Channel, InvertAndSingular) {
    Rng rng(5);
    ComplexMatrix u = random_unitary(rng, 2);
    Channel f = ad(u);
    EXPECT_LT((invert(f).matrix() - ad(u.adjoint()).matrix()).norm(), 1e-10);
    try {
        invert(depolarizing(0.0));
        FAIL() << "no throw";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Singular);
    }
}

TEST(Choi, DepolarizingThreshold) {
    for (double p : {1.0, 0.5, 0.0, -0.3, -1.0 / 3}) {
        EXPECT_TRUE(is_cp(depolarizing(p)).passed()) << p;
        auto spec = choi_spectrum(depolarizing(p));
        ASSERT_EQ(spec.size(), 4u);
        EXPECT_NEAR(spec[0], std::max((1 + 3 * p) / 2, (1 - p) / 2), 1e-12);
        EXPECT_NEAR(spec[3], std::min((1 + 3 * p) / 2, (1 - p) / 2), 1e-12);
    }
    PropertyReport r = is_cp(depolarizing(-0.5));
    EXPECT_FALSE(r.passed());
    ASSERT_TRUE(r.value.has_value());
    EXPECT_NEAR(*r.value, -0.25, 1e-12);
    EXPECT_TRUE(r.witness.has_value());
}

TEST(Choi, TransposeIsPositiveButNotCp) {
    Channel t = transpose_channel(m2);
    EXPECT_TRUE(is_unital(t).passed());
    EXPECT_TRUE(is_star_preserving(t).passed());
    EXPECT_TRUE(is_positive_sampled(t, 64, 0).passed());
    PropertyReport cp = is_cp(t);
    EXPECT_FALSE(cp.passed());
    ASSERT_TRUE(cp.value);
    EXPECT_NEAR(*cp.value, -1.0, 1e-12);
    // Schwarz needs A*A >= AA*, which fails for generic A.
    EXPECT_FALSE(is_schwarz_sampled(t, 64, 0).passed());
}

TEST(Deterministic, HomomorphismsOnly) {
    Rng rng(6);
    EXPECT_TRUE(is_deterministic(identity_channel(AlgebraShape({1, 3}))).passed());
    EXPECT_TRUE(is_deterministic(ad(random_unitary(rng, 3))).passed());
    EXPECT_FALSE(is_deterministic(depolarizing(0.5)).passed());
    EXPECT_FALSE(is_deterministic(transpose_channel(m2)).passed());
    // diagonal inclusion C^2 -> M2 is a unital *-homomorphism
    Channel inc(AlgebraShape::commutative(2), m2,
                (ComplexMatrix(4, 2) << 1, 0, 0, 0, 0, 0, 0, 1).finished());
    EXPECT_TRUE(is_deterministic(inc).passed());
    EXPECT_TRUE(is_cpu(inc).passed());
}

TEST(Channel, UnitalAndStarFailures) {
    Rng rng(7);
    ComplexMatrix v = random_isometry(rng, 3, 2);
    // A -> V* A V is unital; A -> V A V* is not
    EXPECT_TRUE(is_unital(ad(v.adjoint())).passed());
    EXPECT_FALSE(is_unital(ad(v)).passed());
    Channel skew = from_function(m2, m2, [](const AlgElement &b) { return b * Complex(0, 1); });
    EXPECT_FALSE(is_star_preserving(skew).passed());
}

TEST(Channel, MultMapAndFunctional) {
    Rng rng(8);
    Channel mu = mult_map(m2);
    AlgElement a = random_element(rng, m2), b = random_element(rng, m2);
    EXPECT_TRUE(approx_equal(apply(mu, tensor_elem(a, b)), mul(a, b)));
    EXPECT_FALSE(is_cp(mu).passed());
    EXPECT_TRUE(is_deterministic(mult_map(AlgebraShape::commutative(3))).passed());
    AlgElement rho = random_density(rng, AlgebraShape({1, 2}), true);
    AlgElement x = random_element(rng, AlgebraShape({1, 2}));
    Complex expected = trace(mul(rho, x));
    EXPECT_LT(std::abs(apply(functional(rho), x).block(0)(0, 0) - expected), 1e-12);
}

TEST(Channel, AddIsLinear) {
    Rng rng(9);
    Channel f = depolarizing(0.2), g = transpose_channel(m2);
    AlgElement x = random_element(rng, m2);
    Complex s(0.5, -1);
    EXPECT_TRUE(approx_equal(apply(add(f, g, s), x), apply(f, x) + apply(g, x) * s));
}

TEST(Report, DescribeCarriesWitness) {
    PropertyReport r = is_cp(transpose_channel(m2));
    std::string text = describe(r);
    EXPECT_NE(text.find("fail"), std::string::npos);
    EXPECT_NE(text.find("witness"), std::string::npos);
    PropertyReport both = combine("both", {is_cp(depolarizing(0.5)), r});
    EXPECT_FALSE(both.passed());
    EXPECT_EQ(both.parts.size(), 2u);
}

TEST(Flags, Memoized) {
    Channel f = identity_channel(m2).with_flags();
    ASSERT_TRUE(f.flags());
    EXPECT_TRUE(f.flags()->cp && f.flags()->unital && f.flags()->deterministic && f.flags()->star_preserving);
    Channel t = transpose_channel(m2).with_flags();
    EXPECT_FALSE(t.flags()->cp);
}
