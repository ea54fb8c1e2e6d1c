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

#include <Eigen/SVD>

#include "qmarkov/error.hpp"
#include "qmarkov/matrix.hpp"

using namespace qmarkov;

namespace {

ComplexMatrix herm2(double a, double b, double d) {
    ComplexMatrix m(2, 2);
    m << a, b, b, d;
    return m;
}

double dist(const ComplexMatrix &a, const ComplexMatrix &b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(HermEig, KnownSpectrum) {
    HermEig e = herm_eig(herm2(2, 1, 2));
    ASSERT_EQ(e.values.size(), 2u);
    EXPECT_NEAR(e.values[0], 3, 1e-12);
    EXPECT_NEAR(e.values[1], 1, 1e-12);
    // eigenvector of 3 is (1, 1)/sqrt2 up to phase
    EXPECT_NEAR(std::abs(e.vectors(0, 0)), std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(std::abs(e.vectors(1, 0)), std::sqrt(0.5), 1e-12);
}

TEST(HermEig, ReconstructsRandomHermitian) {
    Rng rng(11);
    for (int n = 1; n <= 7; ++n) {
        ComplexMatrix h = random_hermitian(rng, n);
        HermEig e = herm_eig(h);
        for (size_t k = 1; k < e.values.size(); ++k) {
            EXPECT_GE(e.values[k - 1], e.values[k]);
        }
        Eigen::VectorXd lam = Eigen::Map<Eigen::VectorXd>(e.values.data(), n);
        ComplexMatrix back = e.vectors * lam.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        EXPECT_LT(dist(back, h), 1e-10 * std::max(1.0, max_abs(h)));
        EXPECT_LT(dist(e.vectors.adjoint() * e.vectors, ComplexMatrix::Identity(n, n)), 1e-10);
    }
}

TEST(HermEig, RejectsNonHermitian) {
    ComplexMatrix m(2, 2);
    m << 1, 1, 0, 1;
    try {
        herm_eig(m);
        FAIL() << "no throw";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
    }
}

TEST(OpNorm, AgreesWithSvd) {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        ComplexMatrix m = random_gaussian(rng, 1 + t % 5, 1 + (t * 3) % 6);
        Eigen::JacobiSVD<ComplexMatrix> svd(m);
        EXPECT_NEAR(op_norm(m), svd.singularValues()(0), 1e-10);
    }
    EXPECT_DOUBLE_EQ(op_norm(ComplexMatrix::Zero(3, 3)), 0.0);
}

TEST(PinvPsd, DropsKernel) {
    ComplexMatrix m = herm2(2, 0, 0);
    ComplexMatrix p = pinv_psd(m, 1e-10);
    EXPECT_NEAR(p(0, 0).real(), 0.5, 1e-14);
    EXPECT_NEAR(std::abs(p(1, 1)), 0.0, 1e-14);
    ComplexMatrix tiny = herm2(1, 0, 1e-13);
    EXPECT_NEAR(std::abs(pinv_psd(tiny, 1e-10)(1, 1)), 0.0, 1e-14);
}

TEST(PinvPsd, MoorePenroseOnRankDeficient) {
    Rng rng(5);
    for (int n = 2; n <= 6; ++n) {
        ComplexMatrix rho = random_density(rng, n, n - 1);
        ComplexMatrix p = pinv_psd(rho, 1e-10);
        EXPECT_LT(dist(rho * p * rho, rho), 1e-9);
        EXPECT_LT(dist(p * rho * p, p), 1e-9 * std::max(1.0, max_abs(p)));
        EXPECT_LT(dist(rho * p, (rho * p).adjoint()), 1e-9);
        // agrees with the SVD-based pseudo-inverse
        Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(rho);
        cod.setThreshold(1e-10);
        EXPECT_LT(dist(p, cod.pseudoInverse()), 1e-6 * std::max(1.0, max_abs(p)));
    }
}

TEST(SqrtPsd, SquaresBack) {
    Rng rng(8);
    ComplexMatrix rho = random_density(rng, 4, 2);
    ComplexMatrix s = sqrt_psd(rho);
    EXPECT_LT(dist(s * s, rho), 1e-10);
    EXPECT_LT(dist(s, s.adjoint()), 1e-12);
    EXPECT_THROW(sqrt_psd(herm2(1, 0, -1)), Error);
}

TEST(Kron, IndexFormula) {
    Rng rng(2);
    ComplexMatrix a = random_gaussian(rng, 2, 3), b = random_gaussian(rng, 3, 2);
    ComplexMatrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 6);
    ASSERT_EQ(k.cols(), 6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 2; ++c) {
                    EXPECT_EQ(k(i * 3 + r, j * 2 + c), a(i, j) * b(r, c));
                }
}

TEST(NullSpace, Dimension) {
    Rng rng(4);
    ComplexMatrix a = random_gaussian(rng, 3, 5);
    ComplexMatrix n = null_space(a);
    EXPECT_EQ(n.cols(), 2);
    EXPECT_LT(max_abs(a * n), 1e-10);
    EXPECT_LT(dist(n.adjoint() * n, ComplexMatrix::Identity(2, 2)), 1e-10);
    EXPECT_EQ(null_space(ComplexMatrix::Identity(3, 3)).cols(), 0);
}

TEST(LeastSquares, MinimumNorm) {
    Rng rng(6);
    ComplexMatrix a = random_gaussian(rng, 3, 5);
    ComplexVector b = random_gaussian(rng, 3, 1);
    ComplexVector x = solve_least_squares(a, b);
    EXPECT_LT((a * x - b).norm(), 1e-10);
    // minimum norm: orthogonal to the nullspace
    EXPECT_LT((null_space(a).adjoint() * x).norm(), 1e-10);
}

TEST(Generators, UnitaryIsometryDensity) {
    Rng rng(9);
    ComplexMatrix u = random_unitary(rng, 5);
    EXPECT_LT(dist(u.adjoint() * u, ComplexMatrix::Identity(5, 5)), 1e-12);
    ComplexMatrix v = random_isometry(rng, 5, 3);
    EXPECT_LT(dist(v.adjoint() * v, ComplexMatrix::Identity(3, 3)), 1e-12);
    ComplexMatrix rho = random_density(rng, 5, 2);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    HermEig e = herm_eig(rho);
    EXPECT_GT(e.values[1], 1e-8);
    EXPECT_NEAR(e.values[2], 0.0, 1e-12);
    EXPECT_GE(e.values[4], -1e-12);
}

TEST(Generators, SeedIsReproducible) {
    Rng a(77), b(77);
    EXPECT_EQ(random_gaussian(a, 3, 3), random_gaussian(b, 3, 3));
}

TEST(Predicates, Basics) {
    EXPECT_TRUE(is_hermitian(herm2(1, 2, 3), 1e-12));
    ComplexMatrix m = herm2(1, 2, 3);
    m(0, 1) = Complex(2, 1);
    EXPECT_FALSE(is_hermitian(m, 1e-12));
    EXPECT_DOUBLE_EQ(max_abs(herm2(1, -4, 3)), 4.0);
    m(0, 0) = std::nan("");
    EXPECT_FALSE(all_finite(m));
}
