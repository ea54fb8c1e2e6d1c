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
#include "qmarkov/state.hpp"

using namespace qmarkov;

namespace {

const AlgebraShape m2 = AlgebraShape::matrix(2);

AlgElement m2e(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return AlgElement::from_matrix(m);
}

ErrorKind kind_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no throw";
    return ErrorKind::InvalidInput;
}

}  // namespace

TEST(State, Validation) {
    EXPECT_EQ(kind_of([] { State s(m2e(0.5, 0, 0, 0.6)); }), ErrorKind::InvalidState);
    EXPECT_EQ(kind_of([] { State s(m2e(1.2, 0, 0, -0.2)); }), ErrorKind::InvalidState);
    EXPECT_NO_THROW(State(m2e(0.5, 0.5, 0.5, 0.5)));
}

TEST(State, Evaluation) {
    Rng rng(1);
    AlgebraShape s({1, 2});
    AlgElement rho = random_density(rng, s, true);
    State omega(rho);
    AlgElement a = random_element(rng, s);
    EXPECT_LT(std::abs(omega(a) - trace(mul(rho, a))), 1e-12);
    EXPECT_TRUE(omega.faithful());
    State tau = State::tracial(s);
    EXPECT_NEAR(tau(AlgElement::identity(s)).real(), 1.0, 1e-15);
    EXPECT_NEAR(tau(AlgElement::matrix_unit(s, 0)).real(), 1.0 / 3, 1e-15);
}

TEST(Support, SpectralProjection) {
    State pure(m2e(0.5, 0.5, 0.5, 0.5));
    EXPECT_FALSE(pure.faithful());
    EXPECT_TRUE(approx_equal(pure.support(), m2e(0.5, 0.5, 0.5, 0.5)));
    EXPECT_TRUE(approx_equal(pure.support_complement(), m2e(0.5, -0.5, -0.5, 0.5)));
    // eigenvalues below rank * lambda_max are dropped
    AlgElement tiny = AlgElement::from_diagonal({Complex(1), Complex(1e-12), Complex(0.1)});
    EXPECT_TRUE(approx_equal(support(tiny), AlgElement::from_diagonal({Complex(1), Complex(0), Complex(1)})));
    Tolerance loose;
    loose.rank = 0.5;
    EXPECT_TRUE(approx_equal(support(tiny, loose), AlgElement::from_diagonal({Complex(1), Complex(0), Complex(0)})));
}

TEST(Nullspace, MembershipMatchesQuadraticForm) {
    Rng rng(2);
    AlgebraShape s({2, 2});
    for (int t = 0; t < 20; ++t) {
        State omega(random_density(rng, s, false));
        AlgElement a = mul(random_element(rng, s), omega.support_complement());
        // right membership: A P = 0, equivalently omega(A* A) = 0
        EXPECT_TRUE((NullspaceTest{Side::Right, omega}.contains(a)));
        EXPECT_NEAR(omega(mul(adjoint(a), a)).real(), 0.0, 1e-10);
        EXPECT_TRUE((NullspaceTest{Side::Left, omega}.contains(adjoint(a))));
        if (!omega.faithful()) {
            EXPECT_FALSE((NullspaceTest{Side::Right, omega}.contains(AlgElement::identity(s))));
        }
    }
}

TEST(Pullback, StateOfComposite) {
    Rng rng(3);
    // rows of a 4x3 isometry split into two Kraus operators: unital CP M2 -> M3
    ComplexMatrix v = random_isometry(rng, 4, 3);
    Channel f = kraus_channel(m2, AlgebraShape::matrix(3), {v.topRows(2), v.bottomRows(2)});
    ASSERT_TRUE(is_cpu(f).passed());
    State omega(random_density(rng, AlgebraShape::matrix(3), false));
    State xi = pullback_state(omega, f);
    EXPECT_EQ(xi.shape(), m2);
    for (int t = 0; t < 5; ++t) {
        AlgElement b = random_element(rng, m2);
        EXPECT_LT(std::abs(xi(b) - omega(apply(f, b))), 1e-12);
    }
}

TEST(Pullback, NonPositiveThrows) {
    // B -> -B pulls back to a negative functional
    Channel neg = from_function(m2, m2, [](const AlgElement &b) { return b * Complex(-1); });
    EXPECT_EQ(kind_of([&] { pullback_state(State(m2e(0.5, 0, 0, 0.5)), neg); }), ErrorKind::PullbackNotPSD);
}

TEST(AeEqual, SidesDiffer) {
    State omega(m2e(1, 0, 0, 0));
    Channel id = identity_channel(m2);
    // differs by a_11 E_21: (F - G)(B) P != 0 but P (F - G)(B) = 0
    Channel g = from_function(m2, m2, [](const AlgElement &b) {
        AlgElement out = b;
        out.block(0)(1, 0) -= b.block(0)(0, 0);
        return out;
    });
    EXPECT_TRUE(ae_equal(id, g, omega, Side::Left).passed());
    PropertyReport right = ae_equal(id, g, omega, Side::Right);
    EXPECT_FALSE(right.passed());
    EXPECT_TRUE(right.witness);
    // a change in the corner outside the support is invisible to both sides
    Channel h = from_function(m2, m2, [](const AlgElement &b) {
        AlgElement out = b;
        out.block(0)(1, 1) += 3.0 * b.block(0)(0, 1);
        return out;
    });
    EXPECT_TRUE(ae_equal(id, h, omega, Side::Left).passed());
    EXPECT_TRUE(ae_equal(id, h, omega, Side::Right).passed());
}

TEST(AeDeterministic, ClassicalSupport) {
    // (a, b) -> (a, (a + b)/2): deterministic on the first point only
    AlgebraShape c2 = AlgebraShape::commutative(2);
    Channel f(c2, c2, (ComplexMatrix(2, 2) << 1, 0, 0.5, 0.5).finished());
    State on_first(AlgElement::from_diagonal({Complex(1), Complex(0)}));
    State on_second(AlgElement::from_diagonal({Complex(0), Complex(1)}));
    EXPECT_FALSE(is_deterministic(f).passed());
    for (Side side : {Side::Left, Side::Right}) {
        EXPECT_TRUE(ae_deterministic(f, on_first, side).passed());
        EXPECT_FALSE(ae_deterministic(f, on_second, side).passed());
    }
}

TEST(AeDeterministic, PinchingIsNot) {
    Channel pinch = from_function(m2, m2, [](const AlgElement &b) {
        return m2e(b.block(0)(0, 0), 0, 0, b.block(0)(1, 1));
    });
    State omega(m2e(1, 0, 0, 0));
    EXPECT_FALSE(ae_deterministic(pinch, omega, Side::Right).passed());
    EXPECT_TRUE(ae_deterministic(identity_channel(m2), omega, Side::Right).passed());
}

TEST(AeUnital, SupportOnly) {
    State omega(m2e(1, 0, 0, 0));
    // F(1) = diag(1, 2)
    Channel f = from_function(m2, m2, [](const AlgElement &b) {
        AlgElement out = b;
        out.block(0)(1, 1) *= 2.0;
        return out;
    });
    EXPECT_FALSE(is_unital(f).passed());
    EXPECT_TRUE(ae_unital(f, omega, Side::Right).passed());
    EXPECT_TRUE(ae_unital(f, omega, Side::Left).passed());
    EXPECT_FALSE(ae_unital(f, State(m2e(0.5, 0, 0, 0.5)), Side::Right).passed());
}
