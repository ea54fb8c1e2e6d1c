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

#include "qmarkov/algebra.hpp"
#include "qmarkov/error.hpp"

using namespace qmarkov;

TEST(Shape, Coordinates) {
    AlgebraShape s({1, 2, 3});
    EXPECT_EQ(s.coord_dim(), 1 + 4 + 9);
    EXPECT_EQ(s.total_dim(), 6);
    EXPECT_EQ(s.offset(0), 0);
    EXPECT_EQ(s.offset(1), 1);
    EXPECT_EQ(s.offset(2), 5);
    EXPECT_EQ(s.coord(1, 0, 1), 2);
    EXPECT_EQ(s.coord(2, 2, 0), 5 + 6);
    for (int c = 0; c < s.coord_dim(); ++c) {
        auto u = s.unit(c);
        EXPECT_EQ(s.coord(u.block, u.row, u.col), c);
    }
    EXPECT_FALSE(s.is_commutative());
    EXPECT_TRUE(AlgebraShape::commutative(3).is_commutative());
    EXPECT_EQ(AlgebraShape::commutative(3).blocks(), (std::vector<int>{1, 1, 1}));
    EXPECT_THROW(AlgebraShape({2, 0}), Error);
    EXPECT_THROW(AlgebraShape(std::vector<int>{}), Error);
}

TEST(Element, MatrixUnitsFollowCoordinates) {
    AlgebraShape s({1, 2});
    auto units = matrix_units(s);
    ASSERT_EQ(units.size(), 5u);
    // coordinate 2 is E_01 of the second block
    EXPECT_EQ(units[2].block(1)(0, 1), Complex(1));
    EXPECT_EQ(max_abs(units[2]), 1.0);
    EXPECT_NEAR(trace(units[2]).real(), 0.0, 0);
    EXPECT_NEAR(trace(units[4]).real(), 1.0, 0);
}

TEST(Element, VecRoundTrip) {
    Rng rng(1);
    AlgebraShape s({2, 1, 3});
    AlgElement a = random_element(rng, s);
    CoordVector v = vec(a);
    EXPECT_EQ(v.coords.size(), s.coord_dim());
    EXPECT_TRUE(approx_equal(unvec(v), a));
    // coordinates are the entries, row-major within blocks
    EXPECT_EQ(v.coords(1), a.block(0)(0, 1));
    EXPECT_EQ(v.coords(4), a.block(1)(0, 0));
    EXPECT_EQ(v.coords(5 + 3), a.block(2)(1, 0));
}

TEST(Element, ProductAndAdjointAreBlockwise) {
    Rng rng(2);
    AlgebraShape s({2, 3});
    AlgElement a = random_element(rng, s), b = random_element(rng, s);
    AlgElement ab = mul(a, b);
    EXPECT_TRUE((ab.to_dense() - a.to_dense() * b.to_dense()).norm() < 1e-12);
    EXPECT_TRUE((adjoint(a).to_dense() - a.to_dense().adjoint()).norm() < 1e-15);
    EXPECT_THROW(mul(a, random_element(rng, AlgebraShape({3, 2}))), Error);
}

TEST(Element, NormIsLargestBlockNorm) {
    AlgElement a = AlgElement::from_diagonal({Complex(3), Complex(-5), Complex(1)});
    EXPECT_NEAR(norm(a), 5.0, 1e-12);
    EXPECT_NEAR(trace(a).real(), -1.0, 1e-12);
    EXPECT_TRUE(AlgElement::identity(AlgebraShape({2, 2})).to_dense().isIdentity());
}

TEST(Element, Positivity) {
    Rng rng(3);
    AlgebraShape s({2, 3});
    EXPECT_TRUE(is_positive_elem(random_positive(rng, s)));
    AlgElement d = AlgElement::from_diagonal({Complex(1), Complex(-1e-3)});
    EXPECT_FALSE(is_positive_elem(d));
    EXPECT_NEAR(min_eigenvalue(d), -1e-3, 1e-15);
    AlgElement nsa = AlgElement::matrix_unit(AlgebraShape::matrix(2), 1);
    EXPECT_FALSE(is_self_adjoint(nsa, 1e-10));
    EXPECT_THROW(is_positive_elem(nsa), Error);
    AlgElement rho = random_density(rng, s, false);
    EXPECT_NEAR(trace(rho).real(), 1.0, 1e-12);
    EXPECT_TRUE(is_positive_elem(rho));
}

TEST(Element, Projection) {
    AlgebraShape s = AlgebraShape::matrix(2);
    ComplexMatrix p(2, 2);
    p << 0.5, 0.5, 0.5, 0.5;
    EXPECT_TRUE(is_projection(AlgElement::from_matrix(p)));
    EXPECT_FALSE(is_projection(AlgElement::from_matrix(p * 2.0)));
    EXPECT_TRUE(is_projection(AlgElement::zero(s)));
}

TEST(Tensor, ShapeOrdersLeftFactorMajor) {
    AlgebraShape t = tensor_shape(AlgebraShape({1, 2}), AlgebraShape({2, 3}));
    EXPECT_EQ(t.blocks(), (std::vector<int>{2, 3, 4, 6}));
}

TEST(Tensor, SingleBlocksMatchKron) {
    Rng rng(4);
    AlgElement a = random_element(rng, AlgebraShape::matrix(2));
    AlgElement b = random_element(rng, AlgebraShape::matrix(3));
    EXPECT_LT((tensor_elem(a, b).block(0) - kron(a.block(0), b.block(0))).norm(), 1e-14);
}

TEST(Tensor, Multiplicative) {
    Rng rng(5);
    AlgebraShape s1({1, 2}), s2({2, 1});
    AlgElement a = random_element(rng, s1), c = random_element(rng, s1);
    AlgElement b = random_element(rng, s2), d = random_element(rng, s2);
    EXPECT_TRUE(approx_equal(mul(tensor_elem(a, b), tensor_elem(c, d)), tensor_elem(mul(a, c), mul(b, d))));
    EXPECT_TRUE(approx_equal(adjoint(tensor_elem(a, b)), tensor_elem(adjoint(a), adjoint(b))));
}

TEST(Element, ApproxEqualIsRelative) {
    AlgElement a = AlgElement::from_diagonal({Complex(1e6), Complex(1)});
    AlgElement b = AlgElement::from_diagonal({Complex(1e6 + 1e-4), Complex(1)});
    EXPECT_TRUE(approx_equal(a, b));
    AlgElement c = AlgElement::from_diagonal({Complex(1), Complex(1 + 1e-6)});
    EXPECT_FALSE(approx_equal(AlgElement::from_diagonal({Complex(1), Complex(1)}), c));
}
