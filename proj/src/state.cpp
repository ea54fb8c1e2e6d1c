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

#include "qmarkov/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmarkov/error.hpp"

namespace qmarkov {

std::string_view side_name(Side s) { return s == Side::Left ? "left" : "right"; }

namespace {

double frob(const AlgElement &a) {
    double s = 0;
    for (const auto &m : a.blocks()) {
        s += m.squaredNorm();
    }
    return std::sqrt(s);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

AlgElement side_mul(Side side, const AlgElement &p, const AlgElement &x) {
    return side == Side::Right ? mul(x, p) : mul(p, x);
}

}  // namespace

AlgElement support(const AlgElement &rho, const Tolerance &tol) {
    std::vector<HermEig> eigs;
    double lmax = 0;
    for (const auto &m : rho.blocks()) {
        eigs.push_back(herm_eig(m, tol));
        lmax = std::max(lmax, eigs.back().values.front());
    }
    const double cutoff = tol.rank * lmax;
    std::vector<ComplexMatrix> blocks;
    for (const auto &e : eigs) {
        const Eigen::Index n = e.vectors.rows();
        ComplexMatrix p = ComplexMatrix::Zero(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            if (e.values[static_cast<size_t>(k)] > cutoff && e.values[static_cast<size_t>(k)] > 0) {
                p += e.vectors.col(k) * e.vectors.col(k).adjoint();
            }
        }
        blocks.push_back(std::move(p));
    }
    return AlgElement(rho.shape(), std::move(blocks));
}

State::State(AlgElement density, const Tolerance &tol) : density_(std::move(density)), support_(density_.shape()) {
    if (!is_self_adjoint(density_, tol.herm)) {
        throw Error(ErrorKind::InvalidState, "density is not self-adjoint");
    }
    double lo = min_eigenvalue(density_, tol);
    if (lo < -tol.psd * std::max(1.0, norm(density_))) {
        throw Error(ErrorKind::InvalidState, "density has negative eigenvalue " + fmt(lo));
    }
    Complex t = trace(density_);
    if (std::abs(t - 1.0) > tol.eq * std::max(1.0, frob(density_))) {
        throw Error(ErrorKind::InvalidState, "density trace is " + fmt(t.real()) + ", expected 1");
    }
    density_ = 0.5 * (density_ + adjoint(density_));
    support_ = qmarkov::support(density_, tol);
}

AlgElement State::support_complement() const { return AlgElement::identity(shape()) - support_; }

bool State::faithful() const { return approx_equal(support_, AlgElement::identity(shape())); }

Complex State::operator()(const AlgElement &a) const { return trace(mul(density_, a)); }

State State::tracial(const AlgebraShape &shape) {
    AlgElement d = AlgElement::identity(shape);
    d *= 1.0 / shape.total_dim();
    return State(d);
}

bool NullspaceTest::contains(const AlgElement &a, const Tolerance &tol) const {
    AlgElement x = side_mul(side, state.support(), a);
    return approx_zero(x, frob(a), tol);
}

State pullback_state(const State &omega, const Channel &f, const Tolerance &tol) {
    if (f.codomain() != omega.shape()) {
        throw Error(ErrorKind::ShapeMismatch,
                    "state on " + omega.shape().to_string() + " vs codomain " + f.codomain().to_string());
    }
    AlgElement sigma = apply(hs_adjoint(f), omega.density());
    if (!is_self_adjoint(sigma, tol.herm)) {
        throw Error(ErrorKind::PullbackNotPSD, "pulled-back density is not self-adjoint");
    }
    double lo = min_eigenvalue(sigma, tol);
    if (lo < -tol.psd * std::max(1.0, norm(sigma))) {
        throw Error(ErrorKind::PullbackNotPSD, "pulled-back density has eigenvalue " + fmt(lo));
    }
    Complex t = trace(sigma);
    if (std::abs(t - 1.0) > tol.eq * std::max(1.0, frob(sigma))) {
        throw Error(ErrorKind::PullbackNotPSD, "pulled-back functional has mass " + fmt(t.real()));
    }
    return State(sigma, tol);
}

PropertyReport ae_equal(const Channel &f, const Channel &g, const State &omega, Side side, const Tolerance &tol) {
    if (f.domain() != g.domain() || f.codomain() != g.codomain()) {
        throw Error(ErrorKind::ShapeMismatch, "ae_equal needs channels of the same type");
    }
    if (f.codomain() != omega.shape()) {
        throw Error(ErrorKind::ShapeMismatch, "state does not live on the codomain");
    }
    const std::string name = std::string("ae-equal (") + std::string(side_name(side)) + ")";
    const auto &p = omega.support();
    for (const auto &e : matrix_units(f.domain())) {
        AlgElement fe = apply(f, e);
        AlgElement ge = apply(g, e);
        AlgElement d = side_mul(side, p, fe - ge);
        if (!approx_zero(d, std::max(frob(fe), frob(ge)), tol)) {
            return PropertyReport::fail(name, tol.eq, Witness{"basis element B with (F-G)(B) off the nullspace", {e, d}},
                                        "deviation " + fmt(max_abs(d)));
        }
    }
    return PropertyReport::pass(name, tol.eq);
}

PropertyReport ae_deterministic(const Channel &f, const State &omega, Side side, const Tolerance &tol) {
    if (f.codomain() != omega.shape()) {
        throw Error(ErrorKind::ShapeMismatch, "state does not live on the codomain");
    }
    const std::string name = std::string("ae-det (") + std::string(side_name(side)) + ")";
    const auto &dom = f.domain();
    const auto &p = omega.support();
    const auto units = matrix_units(dom);
    std::vector<AlgElement> img, img_adj;
    for (const auto &e : units) {
        img.push_back(apply(f, e));
        img_adj.push_back(adjoint(img.back()));
    }
    const AlgElement zero(f.codomain());
    for (size_t a = 0; a < units.size(); ++a) {
        // E_a* = E_ji for E_a = E_ij
        auto ua = dom.unit(static_cast<int>(a));
        for (size_t b = 0; b < units.size(); ++b) {
            auto ub = dom.unit(static_cast<int>(b));
            const AlgElement &prod = (ua.block == ub.block && ua.row == ub.row)
                                         ? img[static_cast<size_t>(dom.coord(ua.block, ua.col, ub.col))]
                                         : zero;
            AlgElement rhs = mul(img_adj[a], img[b]);
            AlgElement d = side_mul(side, p, prod - rhs);
            if (!approx_zero(d, std::max(frob(prod), frob(img[a]) * frob(img[b])), tol)) {
                return PropertyReport::fail(name, tol.eq, Witness{"(B, C) with F(B*C) != F(B)*F(C) on the support",
                                                                  {units[a], units[b]}},
                                            "deviation " + fmt(max_abs(d)));
            }
        }
    }
    return PropertyReport::pass(name, tol.eq);
}

PropertyReport ae_unital(const Channel &f, const State &omega, Side side, const Tolerance &tol) {
    if (f.codomain() != omega.shape()) {
        throw Error(ErrorKind::ShapeMismatch, "state does not live on the codomain");
    }
    const std::string name = std::string("ae-unital (") + std::string(side_name(side)) + ")";
    AlgElement one = AlgElement::identity(f.domain());
    AlgElement d = side_mul(side, omega.support(), apply(f, one)) - omega.support();
    if (approx_zero(d, frob(omega.support()), tol)) {
        return PropertyReport::pass(name, tol.eq);
    }
    return PropertyReport::fail(name, tol.eq, Witness{"the unit", {one}}, "deviation " + fmt(max_abs(d)));
}

PropertyReport strict_positivity(const Channel &f, const Channel &g, const State &xi, const Tolerance &tol) {
    if (g.domain() != f.codomain() || g.codomain() != xi.shape()) {
        throw Error(ErrorKind::ShapeMismatch, "strict_positivity needs f: B -> A, g: A -> C, xi on C");
    }
    PropertyReport hyp = ae_deterministic(compose(g, f), xi, Side::Left, tol);
    hyp.property = "hypothesis: g∘f left xi-a.e. deterministic";
    const auto &p = xi.support();
    const auto au = matrix_units(f.codomain());
    const auto bu = matrix_units(f.domain());
    auto run = [&](bool mirrored) -> PropertyReport {
        const std::string name = mirrored ? "mirrored: P g(f(B)A) = P g(f(B))g(A)" : "equation: P g(Af(B)) = P g(A)g(f(B))";
        for (const auto &b : bu) {
            AlgElement fb = apply(f, b);
            AlgElement gfb = apply(g, fb);
            for (const auto &a : au) {
                AlgElement ga = apply(g, a);
                AlgElement lhs = mul(p, apply(g, mirrored ? mul(fb, a) : mul(a, fb)));
                AlgElement rhs = mul(p, mirrored ? mul(gfb, ga) : mul(ga, gfb));
                if (!approx_zero(lhs - rhs, std::max(frob(lhs), frob(rhs)), tol)) {
                    return PropertyReport::fail(name, tol.eq, Witness{"(A, B)", {a, b}},
                                                "lhs " + to_string(lhs) + ", rhs " + to_string(rhs));
                }
            }
        }
        return PropertyReport::pass(name, tol.eq);
    };
    PropertyReport eq = run(false);
    PropertyReport mirror = run(true);
    PropertyReport r;
    r.property = "strict-positivity";
    r.tolerance = tol.eq;
    if (hyp.passed() && !eq.passed()) {
        r.verdict = Verdict::Fail;
        r.witness = eq.witness;
        r.detail = "hypothesis holds but the equation fails";
    } else {
        r.detail = hyp.passed() ? "equation holds" : "hypothesis fails, nothing to check";
    }
    r.parts = {hyp, eq, mirror};
    return r;
}

}  // namespace qmarkov
