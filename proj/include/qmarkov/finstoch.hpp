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

// Classical finite probability: column-stochastic matrices over a scalar T,
// where T is double or boost::multiprecision::cpp_rational.

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qmarkov/channel.hpp"
#include "qmarkov/error.hpp"
#include "qmarkov/state.hpp"

namespace qmarkov {

using Rational = boost::multiprecision::cpp_rational;

namespace detail {

template <typename T>
bool near(const T &a, const T &b, double tol) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
    } else {
        (void)tol;
        return a == b;
    }
}

template <typename T>
bool is_zero(const T &a, double tol) {
    return near(a, T(0), tol);
}

template <typename T>
double to_double(const T &a) {
    if constexpr (std::is_floating_point_v<T>) {
        return a;
    } else {
        return a.template convert_to<double>();
    }
}

template <typename T>
std::string to_str(const T &a) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::to_string(a);
    } else {
        return a.str();
    }
}

template <typename T>
double tolerance_of(const Tolerance &tol) {
    return std::is_floating_point_v<T> ? tol.eq : 0.0;
}

}  // namespace detail

/// Markov kernel X -> Y: entry (y, x) is the probability of y given x.
template <typename T>
class StochasticMatrix {
  public:
    StochasticMatrix(int rows, int cols, std::vector<T> entries) : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (rows < 1 || cols < 1 || e_.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
            throw Error(ErrorKind::DimensionMismatch, "stochastic matrix entry count does not match its size");
        }
    }

    static StochasticMatrix identity(int n) {
        std::vector<T> e(static_cast<size_t>(n) * static_cast<size_t>(n), T(0));
        for (int i = 0; i < n; ++i) {
            e[static_cast<size_t>(i * n + i)] = T(1);
        }
        return StochasticMatrix(n, n, std::move(e));
    }

    /// Deterministic kernel of a function X -> Y given as f[x] = y.
    static StochasticMatrix from_function(int n_y, const std::vector<int> &fn) {
        const int n_x = static_cast<int>(fn.size());
        std::vector<T> e(static_cast<size_t>(n_y) * static_cast<size_t>(n_x), T(0));
        for (int x = 0; x < n_x; ++x) {
            if (fn[static_cast<size_t>(x)] < 0 || fn[static_cast<size_t>(x)] >= n_y) {
                throw Error(ErrorKind::DimensionMismatch, "function value out of range");
            }
            e[static_cast<size_t>(fn[static_cast<size_t>(x)] * n_x + x)] = T(1);
        }
        return StochasticMatrix(n_y, n_x, std::move(e));
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const T &operator()(int y, int x) const { return e_[static_cast<size_t>(y * cols_ + x)]; }
    T &operator()(int y, int x) { return e_[static_cast<size_t>(y * cols_ + x)]; }
    const std::vector<T> &entries() const { return e_; }

    /// Nonnegative entries and unit column sums.
    bool is_stochastic(double tol = 1e-9) const {
        for (int x = 0; x < cols_; ++x) {
            T s(0);
            for (int y = 0; y < rows_; ++y) {
                if ((*this)(y, x) < T(0) && !detail::is_zero((*this)(y, x), tol)) {
                    return false;
                }
                s += (*this)(y, x);
            }
            if (!detail::near(s, T(1), tol)) {
                return false;
            }
        }
        return true;
    }

    bool is_deterministic(double tol = 1e-9) const {
        for (int x = 0; x < cols_; ++x) {
            if (!column_is_indicator(x, tol)) {
                return false;
            }
        }
        return true;
    }

    bool column_is_indicator(int x, double tol) const {
        int ones = 0;
        for (int y = 0; y < rows_; ++y) {
            const T &v = (*this)(y, x);
            if (detail::near(v, T(1), tol)) {
                ++ones;
            } else if (!detail::is_zero(v, tol)) {
                return false;
            }
        }
        return ones == 1;
    }

    friend bool operator==(const StochasticMatrix &a, const StochasticMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

  private:
    int rows_;
    int cols_;
    std::vector<T> e_;
};

template <typename T>
class ProbVector {
  public:
    explicit ProbVector(std::vector<T> p) : p_(std::move(p)) {
        if (p_.empty()) {
            throw Error(ErrorKind::DimensionMismatch, "probability vector is empty");
        }
    }

    static ProbVector uniform(int n) { return ProbVector(std::vector<T>(static_cast<size_t>(n), T(1) / T(n))); }

    int size() const { return static_cast<int>(p_.size()); }
    const T &operator[](int i) const { return p_[static_cast<size_t>(i)]; }
    const std::vector<T> &values() const { return p_; }

    bool in_null_set(int i, double tol = 1e-9) const { return detail::is_zero(p_[static_cast<size_t>(i)], tol); }

    bool is_probability(double tol = 1e-9) const {
        T s(0);
        for (const auto &v : p_) {
            if (v < T(0) && !detail::is_zero(v, tol)) {
                return false;
            }
            s += v;
        }
        return detail::near(s, T(1), tol);
    }

    friend bool operator==(const ProbVector &a, const ProbVector &b) { return a.p_ == b.p_; }

  private:
    std::vector<T> p_;
};

/// g after f.
template <typename T>
StochasticMatrix<T> compose(const StochasticMatrix<T> &g, const StochasticMatrix<T> &f) {
    if (g.cols() != f.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "cannot compose kernels: inner dimensions differ");
    }
    std::vector<T> e(static_cast<size_t>(g.rows()) * static_cast<size_t>(f.cols()), T(0));
    for (int z = 0; z < g.rows(); ++z) {
        for (int x = 0; x < f.cols(); ++x) {
            T s(0);
            for (int y = 0; y < f.rows(); ++y) {
                s += g(z, y) * f(y, x);
            }
            e[static_cast<size_t>(z * f.cols() + x)] = s;
        }
    }
    return StochasticMatrix<T>(g.rows(), f.cols(), std::move(e));
}

/// Entry ((y, y'), (x, x')) = f(y, x) f'(y', x'), pairs ordered with the
/// first index major.
template <typename T>
StochasticMatrix<T> product(const StochasticMatrix<T> &f, const StochasticMatrix<T> &fp) {
    const int r = f.rows() * fp.rows();
    const int c = f.cols() * fp.cols();
    std::vector<T> e(static_cast<size_t>(r) * static_cast<size_t>(c));
    for (int y = 0; y < f.rows(); ++y) {
        for (int yp = 0; yp < fp.rows(); ++yp) {
            for (int x = 0; x < f.cols(); ++x) {
                for (int xp = 0; xp < fp.cols(); ++xp) {
                    e[static_cast<size_t>((y * fp.rows() + yp) * c + (x * fp.cols() + xp))] = f(y, x) * fp(yp, xp);
                }
            }
        }
    }
    return StochasticMatrix<T>(r, c, std::move(e));
}

template <typename T>
ProbVector<T> push(const StochasticMatrix<T> &f, const ProbVector<T> &p) {
    if (f.cols() != p.size()) {
        throw Error(ErrorKind::DimensionMismatch, "kernel input size differs from the distribution");
    }
    std::vector<T> q(static_cast<size_t>(f.rows()), T(0));
    for (int y = 0; y < f.rows(); ++y) {
        for (int x = 0; x < f.cols(); ++x) {
            q[static_cast<size_t>(y)] += f(y, x) * p[x];
        }
    }
    return ProbVector<T>(std::move(q));
}

/// g(x, y) = f(y, x) p(x) / q(y), uniform 1/|X| on columns with q(y) = 0.
template <typename T>
StochasticMatrix<T> bayes_inverse(const StochasticMatrix<T> &f, const ProbVector<T> &p, double tol = 1e-9) {
    const ProbVector<T> q = push(f, p);
    const int nx = f.cols();
    const int ny = f.rows();
    std::vector<T> e(static_cast<size_t>(nx) * static_cast<size_t>(ny));
    for (int y = 0; y < ny; ++y) {
        const bool null = q.in_null_set(y, tol);
        for (int x = 0; x < nx; ++x) {
            e[static_cast<size_t>(x * ny + y)] = null ? T(1) / T(nx) : f(y, x) * p[x] / q[y];
        }
    }
    return StochasticMatrix<T>(nx, ny, std::move(e));
}

/// Columns agree wherever p puts mass.
template <typename T>
PropertyReport ae_equal(const StochasticMatrix<T> &f, const StochasticMatrix<T> &h, const ProbVector<T> &p,
                        const Tolerance &tol = {}) {
    if (f.rows() != h.rows() || f.cols() != h.cols() || f.cols() != p.size()) {
        throw Error(ErrorKind::DimensionMismatch, "ae_equal: sizes differ");
    }
    const double t = detail::tolerance_of<T>(tol);
    for (int x = 0; x < f.cols(); ++x) {
        if (p.in_null_set(x, tol.eq)) {
            continue;
        }
        for (int y = 0; y < f.rows(); ++y) {
            if (!detail::near(f(y, x), h(y, x), t)) {
                return PropertyReport::fail("classical ae-equal", t,
                                            Witness{"column x = " + std::to_string(x) + ", row y = " +
                                                        std::to_string(y),
                                                    {}},
                                            detail::to_str(f(y, x)) + " vs " + detail::to_str(h(y, x)));
            }
        }
    }
    return PropertyReport::pass("classical ae-equal", t);
}

/// Every column with p(x) > 0 is an indicator.
template <typename T>
PropertyReport is_ae_deterministic(const StochasticMatrix<T> &f, const ProbVector<T> &p, const Tolerance &tol = {}) {
    const double t = detail::tolerance_of<T>(tol);
    for (int x = 0; x < f.cols(); ++x) {
        if (!p.in_null_set(x, tol.eq) && !f.column_is_indicator(x, t)) {
            return PropertyReport::fail("classical ae-det", t,
                                        Witness{"supported column x = " + std::to_string(x) + " is not 0/1", {}});
        }
    }
    return PropertyReport::pass("classical ae-det", t);
}

/// Column sums are 1 wherever p puts mass.
template <typename T>
PropertyReport is_ae_unital(const StochasticMatrix<T> &f, const ProbVector<T> &p, const Tolerance &tol = {}) {
    const double t = detail::tolerance_of<T>(tol);
    for (int x = 0; x < f.cols(); ++x) {
        if (p.in_null_set(x, tol.eq)) {
            continue;
        }
        T s(0);
        for (int y = 0; y < f.rows(); ++y) {
            s += f(y, x);
        }
        if (!detail::near(s, T(1), t)) {
            return PropertyReport::fail("classical ae-unital", t,
                                        Witness{"supported column x = " + std::to_string(x), {}},
                                        "column sum " + detail::to_str(s));
        }
    }
    return PropertyReport::pass("classical ae-unital", t);
}

/// The Bayes diagram g(x, y) q(y) = f(y, x) p(x) entrywise.
template <typename T>
PropertyReport verify_bayes_diagram(const StochasticMatrix<T> &f, const ProbVector<T> &p,
                                    const StochasticMatrix<T> &g, const Tolerance &tol = {}) {
    const ProbVector<T> q = push(f, p);
    const double t = detail::tolerance_of<T>(tol);
    for (int x = 0; x < f.cols(); ++x) {
        for (int y = 0; y < f.rows(); ++y) {
            if (!detail::near(g(x, y) * q[y], f(y, x) * p[x], t)) {
                return PropertyReport::fail(
                    "classical bayes", t,
                    Witness{"(x, y) = (" + std::to_string(x) + ", " + std::to_string(y) + ")", {}},
                    detail::to_str(T(g(x, y) * q[y])) + " vs " + detail::to_str(T(f(y, x) * p[x])));
            }
        }
    }
    return PropertyReport::pass("classical bayes", t);
}

/// Disintegration of a deterministic f: X -> Y with respect to p; this is the
/// Bayes inverse, g(x, y) = p(x) [f(x) = y] / q(y).
template <typename T>
StochasticMatrix<T> disintegration(const StochasticMatrix<T> &f, const ProbVector<T> &p, const Tolerance &tol = {}) {
    if (!is_ae_deterministic(f, p, tol).passed()) {
        throw Error(ErrorKind::NotAeDeterministic, "kernel is not p-a.e. deterministic");
    }
    return bayes_inverse(f, p, tol.eq);
}

/// g: Y -> X disintegrates (f, p) when push(g, q) = p and f∘g ≍_q id_Y,
/// with q = push(f, p).
template <typename T>
PropertyReport verify_disintegration(const StochasticMatrix<T> &f, const ProbVector<T> &p,
                                     const StochasticMatrix<T> &g, const Tolerance &tol = {}) {
    if (g.rows() != f.cols() || g.cols() != f.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "disintegration has the wrong shape");
    }
    const ProbVector<T> q = push(f, p);
    const double t = detail::tolerance_of<T>(tol);
    const ProbVector<T> back = push(g, q);
    PropertyReport preserve = PropertyReport::pass("classical state-preserving: g∘q = p", t);
    for (int x = 0; x < p.size(); ++x) {
        if (!detail::near(back[x], p[x], t)) {
            preserve = PropertyReport::fail(preserve.property, t, Witness{"x = " + std::to_string(x), {}},
                                            detail::to_str(back[x]) + " vs " + detail::to_str(p[x]));
            break;
        }
    }
    PropertyReport inverse = ae_equal(compose(f, g), StochasticMatrix<T>::identity(f.rows()), q, tol);
    inverse.property = "classical f∘g ≍ id";
    return combine("classical disintegration", {preserve, inverse});
}

/// Channel C^Y -> C^X whose matrix is the transpose of f.
template <typename T>
Channel embed(const StochasticMatrix<T> &f) {
    ComplexMatrix m(f.cols(), f.rows());
    for (int x = 0; x < f.cols(); ++x) {
        for (int y = 0; y < f.rows(); ++y) {
            m(x, y) = detail::to_double(f(y, x));
        }
    }
    return Channel(AlgebraShape::commutative(f.rows()), AlgebraShape::commutative(f.cols()), std::move(m));
}

template <typename T>
State embed_prob(const ProbVector<T> &p, const Tolerance &tol = {}) {
    std::vector<Complex> d;
    for (const auto &v : p.values()) {
        d.emplace_back(detail::to_double(v), 0.0);
    }
    return State(AlgElement::from_diagonal(d), tol);
}

template <typename T>
StochasticMatrix<double> to_double(const StochasticMatrix<T> &f) {
    std::vector<double> e;
    for (const auto &v : f.entries()) {
        e.push_back(detail::to_double(v));
    }
    return StochasticMatrix<double>(f.rows(), f.cols(), std::move(e));
}

template <typename T>
ProbVector<double> to_double(const ProbVector<T> &p) {
    std::vector<double> e;
    for (const auto &v : p.values()) {
        e.push_back(detail::to_double(v));
    }
    return ProbVector<double>(std::move(e));
}

}  // namespace qmarkov
