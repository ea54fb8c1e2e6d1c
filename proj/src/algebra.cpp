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

#include "qmarkov/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "qmarkov/error.hpp"

namespace qmarkov {

AlgebraShape::AlgebraShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        throw Error(ErrorKind::InvalidInput, "shape needs at least one block");
    }
    offsets_.reserve(blocks_.size());
    for (int n : blocks_) {
        if (n < 1) {
            throw Error(ErrorKind::InvalidInput, "block dimensions must be positive");
        }
        offsets_.push_back(coord_dim_);
        coord_dim_ += n * n;
        total_dim_ += n;
    }
}

AlgebraShape AlgebraShape::commutative(int k) { return AlgebraShape(std::vector<int>(static_cast<size_t>(k), 1)); }

bool AlgebraShape::is_commutative() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](int n) { return n == 1; });
}

AlgebraShape::Unit AlgebraShape::unit(int c) const {
    if (c < 0 || c >= coord_dim_) {
        throw Error(ErrorKind::DimensionMismatch, "coordinate out of range");
    }
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), c);
    int b = static_cast<int>(it - offsets_.begin()) - 1;
    int local = c - offsets_[static_cast<size_t>(b)];
    int n = block(b);
    return {b, local / n, local % n};
}

std::string AlgebraShape::to_string() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < blocks_.size(); ++i) {
        os << (i ? "," : "") << blocks_[i];
    }
    os << ')';
    return os.str();
}

AlgElement::AlgElement(AlgebraShape shape) : shape_(std::move(shape)) {
    for (int n : shape_.blocks()) {
        blocks_.push_back(ComplexMatrix::Zero(n, n));
    }
}

AlgElement::AlgElement(AlgebraShape shape, std::vector<ComplexMatrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != shape_.num_blocks()) {
        throw Error(ErrorKind::ShapeMismatch, "block count differs from shape");
    }
    for (int b = 0; b < shape_.num_blocks(); ++b) {
        if (block(b).rows() != shape_.block(b) || block(b).cols() != shape_.block(b)) {
            throw Error(ErrorKind::ShapeMismatch, "block " + std::to_string(b) + " has the wrong size");
        }
    }
}

AlgElement AlgElement::identity(const AlgebraShape &shape) {
    AlgElement out(shape);
    for (auto &m : out.blocks_) {
        m.setIdentity();
    }
    return out;
}

AlgElement AlgElement::matrix_unit(const AlgebraShape &shape, int c) {
    AlgElement out(shape);
    auto u = shape.unit(c);
    out.block(u.block)(u.row, u.col) = 1.0;
    return out;
}

AlgElement AlgElement::from_matrix(const ComplexMatrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::ShapeMismatch, "expected a nonempty square matrix");
    }
    return AlgElement(AlgebraShape::matrix(static_cast<int>(m.rows())), {m});
}

AlgElement AlgElement::from_diagonal(const std::vector<Complex> &values) {
    AlgElement out(AlgebraShape::commutative(static_cast<int>(values.size())));
    for (size_t i = 0; i < values.size(); ++i) {
        out.blocks_[i](0, 0) = values[i];
    }
    return out;
}

ComplexMatrix AlgElement::to_dense() const {
    const int n = shape_.total_dim();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    int at = 0;
    for (const auto &m : blocks_) {
        out.block(at, at, m.rows(), m.cols()) = m;
        at += static_cast<int>(m.rows());
    }
    return out;
}

AlgElement &AlgElement::operator+=(const AlgElement &other) {
    if (shape_ != other.shape_) {
        throw Error(ErrorKind::ShapeMismatch, shape_.to_string() + " vs " + other.shape_.to_string());
    }
    for (size_t i = 0; i < blocks_.size(); ++i) {
        blocks_[i] += other.blocks_[i];
    }
    return *this;
}

AlgElement &AlgElement::operator-=(const AlgElement &other) {
    if (shape_ != other.shape_) {
        throw Error(ErrorKind::ShapeMismatch, shape_.to_string() + " vs " + other.shape_.to_string());
    }
    for (size_t i = 0; i < blocks_.size(); ++i) {
        blocks_[i] -= other.blocks_[i];
    }
    return *this;
}

AlgElement &AlgElement::operator*=(Complex s) {
    for (auto &m : blocks_) {
        m *= s;
    }
    return *this;
}

AlgElement mul(const AlgElement &a, const AlgElement &b) {
    if (a.shape() != b.shape()) {
        throw Error(ErrorKind::ShapeMismatch, a.shape().to_string() + " vs " + b.shape().to_string());
    }
    std::vector<ComplexMatrix> out;
    out.reserve(a.blocks().size());
    for (int i = 0; i < a.shape().num_blocks(); ++i) {
        out.push_back(a.block(i) * b.block(i));
    }
    return AlgElement(a.shape(), std::move(out));
}

AlgElement adjoint(const AlgElement &a) {
    std::vector<ComplexMatrix> out;
    for (const auto &m : a.blocks()) {
        out.push_back(m.adjoint());
    }
    return AlgElement(a.shape(), std::move(out));
}

AlgElement unit_map(const AlgebraShape &shape) { return AlgElement::identity(shape); }

AlgebraShape tensor_shape(const AlgebraShape &s1, const AlgebraShape &s2) {
    std::vector<int> blocks;
    for (int m : s1.blocks()) {
        for (int n : s2.blocks()) {
            blocks.push_back(m * n);
        }
    }
    return AlgebraShape(std::move(blocks));
}

AlgElement tensor_elem(const AlgElement &a, const AlgElement &b) {
    std::vector<ComplexMatrix> out;
    for (const auto &x : a.blocks()) {
        for (const auto &y : b.blocks()) {
            out.push_back(kron(x, y));
        }
    }
    return AlgElement(tensor_shape(a.shape(), b.shape()), std::move(out));
}

std::vector<AlgElement> matrix_units(const AlgebraShape &shape) {
    std::vector<AlgElement> out;
    out.reserve(static_cast<size_t>(shape.coord_dim()));
    for (int c = 0; c < shape.coord_dim(); ++c) {
        out.push_back(AlgElement::matrix_unit(shape, c));
    }
    return out;
}

CoordVector vec(const AlgElement &a) {
    const auto &shape = a.shape();
    ComplexVector coords(shape.coord_dim());
    for (int b = 0; b < shape.num_blocks(); ++b) {
        const int n = shape.block(b);
        const auto &m = a.block(b);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                coords(shape.coord(b, i, j)) = m(i, j);
            }
        }
    }
    return {shape, std::move(coords)};
}

AlgElement unvec(const AlgebraShape &shape, const ComplexVector &coords) {
    if (coords.size() != shape.coord_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "coordinate vector length " + std::to_string(coords.size()) +
                                                       " vs coord_dim " + std::to_string(shape.coord_dim()));
    }
    AlgElement out(shape);
    for (int b = 0; b < shape.num_blocks(); ++b) {
        const int n = shape.block(b);
        auto &m = out.block(b);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                m(i, j) = coords(shape.coord(b, i, j));
            }
        }
    }
    return out;
}

AlgElement unvec(const CoordVector &v) { return unvec(v.shape, v.coords); }

Complex trace(const AlgElement &a) {
    Complex t = 0;
    for (const auto &m : a.blocks()) {
        t += m.trace();
    }
    return t;
}

double norm(const AlgElement &a) {
    double out = 0;
    for (const auto &m : a.blocks()) {
        out = std::max(out, op_norm(m));
    }
    return out;
}

double max_abs(const AlgElement &a) {
    double out = 0;
    for (const auto &m : a.blocks()) {
        out = std::max(out, max_abs(m));
    }
    return out;
}

namespace {

double frob(const AlgElement &a) {
    double s = 0;
    for (const auto &m : a.blocks()) {
        s += m.squaredNorm();
    }
    return std::sqrt(s);
}

}  // namespace

bool is_self_adjoint(const AlgElement &a, double rel_tol) {
    for (const auto &m : a.blocks()) {
        if (!is_hermitian(m, rel_tol)) {
            return false;
        }
    }
    return true;
}

double min_eigenvalue(const AlgElement &a, const Tolerance &tol) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto &m : a.blocks()) {
        if (!is_hermitian(m, tol.herm)) {
            throw Error(ErrorKind::NotSelfAdjoint, "element is not self-adjoint");
        }
        auto e = herm_eig(m, tol);
        lo = std::min(lo, e.values.back());
    }
    return lo;
}

bool is_positive_elem(const AlgElement &a, const Tolerance &tol) {
    double lo = min_eigenvalue(a, tol);
    return lo >= -tol.psd * std::max(1.0, norm(a));
}

bool is_projection(const AlgElement &p, const Tolerance &tol) {
    if (!is_self_adjoint(p, tol.herm)) {
        return false;
    }
    return approx_equal(mul(p, p), p, tol);
}

bool approx_equal(const AlgElement &a, const AlgElement &b, const Tolerance &tol) {
    if (a.shape() != b.shape()) {
        return false;
    }
    double scale = std::max({1.0, frob(a), frob(b)});
    return max_abs(a - b) <= tol.eq * scale;
}

bool approx_zero(const AlgElement &a, double scale, const Tolerance &tol) {
    return max_abs(a) <= tol.eq * std::max(1.0, scale);
}

AlgElement random_element(Rng &rng, const AlgebraShape &shape) {
    std::vector<ComplexMatrix> blocks;
    for (int n : shape.blocks()) {
        blocks.push_back(random_gaussian(rng, n, n));
    }
    return AlgElement(shape, std::move(blocks));
}

AlgElement random_self_adjoint(Rng &rng, const AlgebraShape &shape) {
    AlgElement m = random_element(rng, shape);
    return 0.5 * (m + adjoint(m));
}

AlgElement random_positive(Rng &rng, const AlgebraShape &shape) {
    std::vector<ComplexMatrix> blocks;
    for (int n : shape.blocks()) {
        std::uniform_int_distribution<int> pick(1, n);
        int rank = pick(rng);
        ComplexMatrix g = random_gaussian(rng, n, n);
        g.bottomRows(n - rank).setZero();
        ComplexMatrix p = g.adjoint() * g;
        blocks.push_back((p + p.adjoint()) / 2.0);
    }
    return AlgElement(shape, std::move(blocks));
}

AlgElement random_density(Rng &rng, const AlgebraShape &shape, bool full_rank) {
    std::vector<ComplexMatrix> blocks;
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    double total = 0;
    for (int n : shape.blocks()) {
        int rank = n;
        if (!full_rank) {
            std::uniform_int_distribution<int> pick(1, n);
            rank = pick(rng);
        }
        ComplexMatrix d = qmarkov::random_density(rng, n, rank) * weight(rng);
        total += d.trace().real();
        blocks.push_back(std::move(d));
    }
    for (auto &b : blocks) {
        b /= total;
    }
    return AlgElement(shape, std::move(blocks));
}

std::string to_string(const AlgElement &a, int precision) {
    std::ostringstream os;
    os << std::setprecision(precision);
    for (int b = 0; b < a.shape().num_blocks(); ++b) {
        if (b) {
            os << " (+) ";
        }
        const auto &m = a.block(b);
        os << '[';
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            os << (i ? "; " : "");
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                const Complex z = m(i, j);
                os << (j ? ", " : "");
                double re = std::abs(z.real()) < 1e-14 ? 0.0 : z.real();
                double im = std::abs(z.imag()) < 1e-14 ? 0.0 : z.imag();
                if (im == 0.0) {
                    os << re;
                } else {
                    os << re << (im < 0 ? "-" : "+") << std::abs(im) << 'i';
                }
            }
        }
        os << ']';
    }
    return os.str();
}

}  // namespace qmarkov
