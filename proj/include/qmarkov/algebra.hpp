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

#include <string>
#include <vector>

#include "qmarkov/matrix.hpp"
#include "qmarkov/tolerance.hpp"

namespace qmarkov {

/// A finite direct sum of matrix algebras M_{n_1} + ... + M_{n_k}.
///
/// Coordinates are the matrix units E_ij of each block, blocks in order and
/// row-major inside a block, so coord_dim() = sum n_i^2.
class AlgebraShape {
  public:
    explicit AlgebraShape(std::vector<int> blocks);

    /// M_n.
    static AlgebraShape matrix(int n) { return AlgebraShape({n}); }
    /// C^k, i.e. k one-dimensional blocks.
    static AlgebraShape commutative(int k);

    const std::vector<int> &blocks() const { return blocks_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    int block(int b) const { return blocks_[static_cast<size_t>(b)]; }
    int coord_dim() const { return coord_dim_; }
    /// sum n_i, the dimension of the Hilbert space the algebra acts on.
    int total_dim() const { return total_dim_; }
    /// First coordinate belonging to block b.
    int offset(int b) const { return offsets_[static_cast<size_t>(b)]; }
    bool is_commutative() const;

    struct Unit {
        int block;
        int row;
        int col;
    };
    Unit unit(int coord) const;
    int coord(int block, int row, int col) const { return offset(block) + row * this->block(block) + col; }

    std::string to_string() const;

    friend bool operator==(const AlgebraShape &a, const AlgebraShape &b) { return a.blocks_ == b.blocks_; }
    friend bool operator!=(const AlgebraShape &a, const AlgebraShape &b) { return !(a == b); }

  private:
    std::vector<int> blocks_;
    std::vector<int> offsets_;
    int coord_dim_ = 0;
    int total_dim_ = 0;
};

/// Block-diagonal complex matrix: one n_i x n_i matrix per block of the shape.
class AlgElement {
  public:
    /// Zero element.
    explicit AlgElement(AlgebraShape shape);
    AlgElement(AlgebraShape shape, std::vector<ComplexMatrix> blocks);

    static AlgElement zero(const AlgebraShape &shape) { return AlgElement(shape); }
    static AlgElement identity(const AlgebraShape &shape);
    static AlgElement matrix_unit(const AlgebraShape &shape, int coord);
    /// Single-block shorthand.
    static AlgElement from_matrix(const ComplexMatrix &m);
    /// Commutative shorthand: diag entries become 1x1 blocks.
    static AlgElement from_diagonal(const std::vector<Complex> &values);

    const AlgebraShape &shape() const { return shape_; }
    const ComplexMatrix &block(int b) const { return blocks_[static_cast<size_t>(b)]; }
    ComplexMatrix &block(int b) { return blocks_[static_cast<size_t>(b)]; }
    const std::vector<ComplexMatrix> &blocks() const { return blocks_; }

    /// Dense block-diagonal matrix of size total_dim().
    ComplexMatrix to_dense() const;

    AlgElement &operator+=(const AlgElement &other);
    AlgElement &operator-=(const AlgElement &other);
    AlgElement &operator*=(Complex s);

    friend AlgElement operator+(AlgElement a, const AlgElement &b) { return a += b; }
    friend AlgElement operator-(AlgElement a, const AlgElement &b) { return a -= b; }
    friend AlgElement operator*(Complex s, AlgElement a) { return a *= s; }
    friend AlgElement operator*(AlgElement a, Complex s) { return a *= s; }

  private:
    AlgebraShape shape_;
    std::vector<ComplexMatrix> blocks_;
};

/// Coordinates of an element in the matrix-unit basis.
struct CoordVector {
    AlgebraShape shape;
    ComplexVector coords;
};

/// Blockwise product. Throws ShapeMismatch.
AlgElement mul(const AlgElement &a, const AlgElement &b);
AlgElement adjoint(const AlgElement &a);
AlgElement unit_map(const AlgebraShape &shape);

/// Blocks (x, y) ordered with the left factor major; each block is M_{m_x n_y}.
AlgebraShape tensor_shape(const AlgebraShape &s1, const AlgebraShape &s2);
AlgElement tensor_elem(const AlgElement &a, const AlgElement &b);

std::vector<AlgElement> matrix_units(const AlgebraShape &shape);
CoordVector vec(const AlgElement &a);
AlgElement unvec(const CoordVector &v);
AlgElement unvec(const AlgebraShape &shape, const ComplexVector &coords);

/// Sum of block traces.
Complex trace(const AlgElement &a);
/// C*-norm: the largest block operator norm.
double norm(const AlgElement &a);
/// Largest absolute entry over all blocks.
double max_abs(const AlgElement &a);

bool is_self_adjoint(const AlgElement &a, double rel_tol);
/// Throws NotSelfAdjoint when a is not self-adjoint within tol.herm.
bool is_positive_elem(const AlgElement &a, const Tolerance &tol = {});
/// Smallest eigenvalue over all blocks; a must be self-adjoint.
double min_eigenvalue(const AlgElement &a, const Tolerance &tol = {});
bool is_projection(const AlgElement &p, const Tolerance &tol = {});

/// Entrywise equality within tol.eq * max(1, |a|, |b|).
bool approx_equal(const AlgElement &a, const AlgElement &b, const Tolerance &tol = {});
/// a is zero relative to the given scale.
bool approx_zero(const AlgElement &a, double scale, const Tolerance &tol = {});

AlgElement random_element(Rng &rng, const AlgebraShape &shape);
AlgElement random_self_adjoint(Rng &rng, const AlgebraShape &shape);
/// B*B for a Gaussian B whose rows beyond a random rank are zeroed, so the
/// result has random rank per block.
AlgElement random_positive(Rng &rng, const AlgebraShape &shape);
/// Random density: PSD with total trace one. Blocks get random weights and,
/// unless full_rank, a random rank.
AlgElement random_density(Rng &rng, const AlgebraShape &shape, bool full_rank);

std::string to_string(const AlgElement &a, int precision = 6);

}  // namespace qmarkov
