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

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qmarkov/tolerance.hpp"

namespace qmarkov {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Seeded generator shared by every randomized routine.
using Rng = std::mt19937_64;

struct HermEig {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Eigendecomposition of a Hermitian matrix.
///
/// Throws NotHermitian when |m - m*| exceeds tol.herm * max(1, |m|) and
/// NoConvergence if the solver gives up.
HermEig herm_eig(const ComplexMatrix &m, const Tolerance &tol = {});

/// Moore-Penrose inverse of a PSD matrix. Eigenvalues at or below
/// rank_tol * lambda_max are dropped.
ComplexMatrix pinv_psd(const ComplexMatrix &m, double rank_tol, const Tolerance &tol = {});

/// Largest singular value, computed as sqrt(lambda_max(m* m)).
double op_norm(const ComplexMatrix &m);

/// PSD square root. Throws NotPSD for inputs with a negative eigenvalue
/// beyond tol.psd.
ComplexMatrix sqrt_psd(const ComplexMatrix &m, const Tolerance &tol = {});

bool is_hermitian(const ComplexMatrix &m, double rel_tol);
double max_abs(const ComplexMatrix &m);
bool all_finite(const ComplexMatrix &m);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Minimum-norm least-squares solution of a x = b.
ComplexVector solve_least_squares(const ComplexMatrix &a, const ComplexVector &b);

/// Orthonormal basis (as columns) of the nullspace of a.
ComplexMatrix null_space(const ComplexMatrix &a, double rel_tol = 1e-10);

// Random generators. Complex entries are standard complex Gaussians
// (real and imaginary parts N(0, 1/2)).
ComplexMatrix random_gaussian(Rng &rng, Eigen::Index rows, Eigen::Index cols);
ComplexMatrix random_hermitian(Rng &rng, Eigen::Index n);
ComplexMatrix random_unitary(Rng &rng, Eigen::Index n);
/// Columns orthonormal: m x n with m >= n.
ComplexMatrix random_isometry(Rng &rng, Eigen::Index m, Eigen::Index n);
/// Random density matrix of the given rank (trace one).
ComplexMatrix random_density(Rng &rng, Eigen::Index n, Eigen::Index rank);

}  // namespace qmarkov
