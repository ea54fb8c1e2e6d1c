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

#include "qmarkov/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "qmarkov/error.hpp"

namespace qmarkov {

namespace {

double frobenius(const ComplexMatrix &m) { return m.norm(); }

}  // namespace

bool is_hermitian(const ComplexMatrix &m, double rel_tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    double scale = std::max(1.0, frobenius(m));
    return max_abs(m - m.adjoint()) <= rel_tol * scale;
}

double max_abs(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        const Complex z = m.data()[k];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

HermEig herm_eig(const ComplexMatrix &m, const Tolerance &tol) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::NotHermitian, "matrix is not square");
    }
    if (!is_hermitian(m, tol.herm)) {
        throw Error(ErrorKind::NotHermitian,
                    "asymmetry " + std::to_string(max_abs(m - m.adjoint())) + " exceeds tolerance");
    }
    HermEig out;
    const Eigen::Index n = m.rows();
    if (n == 0) {
        out.vectors = ComplexMatrix(0, 0);
        return out;
    }
    ComplexMatrix sym = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "Hermitian eigensolver did not converge");
    }
    // Eigen sorts ascending.
    out.values.resize(static_cast<size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[static_cast<size_t>(k)] = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

namespace {

HermEig psd_eig(const ComplexMatrix &m, const Tolerance &tol) {
    HermEig e = herm_eig(m, tol);
    if (!e.values.empty()) {
        double scale = std::max(1.0, std::abs(e.values.front()));
        scale = std::max(scale, std::abs(e.values.back()));
        if (e.values.back() < -tol.psd * scale) {
            throw Error(ErrorKind::NotPSD, "minimum eigenvalue " + std::to_string(e.values.back()));
        }
    }
    return e;
}

}  // namespace

ComplexMatrix pinv_psd(const ComplexMatrix &m, double rank_tol, const Tolerance &tol) {
    HermEig e = psd_eig(m, tol);
    const Eigen::Index n = m.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    if (n == 0) {
        return out;
    }
    const double cutoff = rank_tol * std::max(0.0, e.values.front());
    for (Eigen::Index k = 0; k < n; ++k) {
        double lambda = e.values[static_cast<size_t>(k)];
        if (lambda > cutoff && lambda > 0) {
            out += (1.0 / lambda) * e.vectors.col(k) * e.vectors.col(k).adjoint();
        }
    }
    return out;
}

double op_norm(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    ComplexMatrix gram = m.adjoint() * m;
    gram = (gram + gram.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "eigensolver failed in op_norm");
    }
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

ComplexMatrix sqrt_psd(const ComplexMatrix &m, const Tolerance &tol) {
    HermEig e = psd_eig(m, tol);
    const Eigen::Index n = m.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double lambda = std::max(0.0, e.values[static_cast<size_t>(k)]);
        if (lambda > 0) {
            out += std::sqrt(lambda) * e.vectors.col(k) * e.vectors.col(k).adjoint();
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector solve_least_squares(const ComplexMatrix &a, const ComplexVector &b) {
    if (a.rows() != b.size()) {
        throw Error(ErrorKind::DimensionMismatch, "least squares: row count differs from rhs length");
    }
    Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
    return cod.solve(b);
}

ComplexMatrix null_space(const ComplexMatrix &a, double rel_tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > rel_tol * std::max(1.0, smax)) {
            ++rank;
        }
    }
    const Eigen::Index n = a.cols();
    return svd.matrixV().rightCols(n - rank);
}

ComplexMatrix random_gaussian(Rng &rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix out(rows, cols);
    // Fill row-major so the sequence does not depend on Eigen's storage order.
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            double re = normal(rng);
            double im = normal(rng);
            out(i, j) = Complex(re, im);
        }
    }
    return out;
}

ComplexMatrix random_hermitian(Rng &rng, Eigen::Index n) {
    ComplexMatrix g = random_gaussian(rng, n, n);
    return (g + g.adjoint()) / 2.0;
}

ComplexMatrix random_unitary(Rng &rng, Eigen::Index n) {
    ComplexMatrix g = random_gaussian(rng, n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        double mag = std::abs(r(k, k));
        Complex phase = mag > 0 ? r(k, k) / mag : Complex(1.0);
        q.col(k) *= phase;
    }
    return q;
}

ComplexMatrix random_isometry(Rng &rng, Eigen::Index m, Eigen::Index n) {
    return random_unitary(rng, m).leftCols(n);
}

ComplexMatrix random_density(Rng &rng, Eigen::Index n, Eigen::Index rank) {
    ComplexMatrix g = random_gaussian(rng, n, rank);
    ComplexMatrix rho = g * g.adjoint();
    rho = (rho + rho.adjoint()) / 2.0;
    return rho / rho.trace().real();
}

}  // namespace qmarkov
