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

#include "qmarkov/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmarkov/error.hpp"

namespace qmarkov {

namespace {

double frob(const AlgElement &a) {
    double s = 0;
    for (const auto &m : a.blocks()) {
        s += m.squaredNorm();
    }
    return std::sqrt(s);
}

std::string fmt(Complex z) {
    std::ostringstream os;
    os.precision(12);
    if (z.imag() == 0.0) {
        os << z.real();
    } else {
        os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    return os.str();
}

bool scalar_close(Complex a, Complex b, double scale, const Tolerance &tol) {
    return std::abs(a - b) <= tol.eq * std::max({1.0, scale, std::abs(a), std::abs(b)});
}

/// tr(X E_b) for the matrix unit at coordinate b is X_{col,row} in its block.
Complex pair_with_unit(const AlgElement &x, const AlgebraShape::Unit &u) { return x.block(u.block)(u.col, u.row); }

/// Pseudo-inverse with the rank cutoff taken relative to the global
/// largest eigenvalue, matching the support convention.
AlgElement pinv_global(const AlgElement &sigma, const Tolerance &tol) {
    double lmax = 0;
    for (const auto &m : sigma.blocks()) {
        lmax = std::max(lmax, herm_eig(m, tol).values.front());
    }
    std::vector<ComplexMatrix> out;
    for (const auto &m : sigma.blocks()) {
        auto e = herm_eig(m, tol);
        ComplexMatrix inv = ComplexMatrix::Zero(m.rows(), m.cols());
        for (Eigen::Index k = 0; k < m.rows(); ++k) {
            double l = e.values[static_cast<size_t>(k)];
            if (l > tol.rank * lmax && l > 0) {
                inv += (1.0 / l) * e.vectors.col(k) * e.vectors.col(k).adjoint();
            }
        }
        out.push_back(std::move(inv));
    }
    return AlgElement(sigma.shape(), std::move(out));
}

AlgElement sqrt_elem(const AlgElement &a, const Tolerance &tol) {
    std::vector<ComplexMatrix> out;
    for (const auto &m : a.blocks()) {
        out.push_back(sqrt_psd(m, tol));
    }
    return AlgElement(a.shape(), std::move(out));
}

}  // namespace

BayesProblem BayesProblem::make(const Channel &f, const State &omega, const Tolerance &tol) {
    State xi = pullback_state(omega, f, tol);
    return BayesProblem{f, omega, xi};
}

BayesResult bayes_candidate(const BayesProblem &prob, const Tolerance &tol) {
    const Channel &f = prob.f;
    const AlgebraShape &a_shape = f.codomain();
    const AlgebraShape &b_shape = f.domain();
    const Channel fstar = hs_adjoint(f);
    const AlgElement sigma_hat = pinv_global(prob.xi.density(), tol);
    const AlgElement off = prob.xi.support_complement();
    const AlgElement &rho = prob.omega.density();
    const double n_total = a_shape.total_dim();

    Channel g = from_function(a_shape, b_shape, [&](const AlgElement &a) {
        AlgElement out = mul(sigma_hat, apply(fstar, mul(rho, a)));
        out += (trace(a) / n_total) * off;
        return out;
    });

    BayesResult res{g,
                    verify_bayes(f, prob.omega, prob.xi, g, Side::Left, tol),
                    verify_bayes(f, prob.omega, prob.xi, g, Side::Right, tol),
                    is_cpu(g, tol),
                    {}};
    if (!res.bayes_left.passed()) {
        res.notes.push_back("left Bayes condition fails: " + res.bayes_left.detail);
    }
    if (!res.bayes_right.passed()) {
        res.notes.push_back("right Bayes condition fails: " + res.bayes_right.detail);
    }
    for (const auto &p : res.cpu.parts) {
        if (!p.passed()) {
            res.notes.push_back("candidate is not " + p.property + ": " + p.detail);
        }
    }
    return res;
}

PropertyReport verify_bayes(const Channel &f, const State &omega, const State &xi, const Channel &g, Side side,
                            const Tolerance &tol) {
    if (f.codomain() != omega.shape() || f.domain() != xi.shape() || g.domain() != f.codomain() ||
        g.codomain() != f.domain()) {
        throw Error(ErrorKind::ShapeMismatch, "verify_bayes needs F: B -> A, omega on A, xi on B, G: A -> B");
    }
    const std::string name = std::string("bayes (") + std::string(side_name(side)) + ")";
    const AlgebraShape &as = f.codomain();
    const AlgebraShape &bs = f.domain();
    const AlgElement &sigma = xi.density();
    const AlgElement &rho = omega.density();

    // Left:  xi(G(E_a) E_b) = tr(sigma G(E_a) E_b),  omega(E_a F(E_b)) = tr(F(E_b) rho E_a).
    // Right: xi(E_b G(E_a)) = tr(G(E_a) sigma E_b), omega(F(E_b) E_a) = tr(rho F(E_b) E_a).
    std::vector<AlgElement> lhs_cache;
    for (int a = 0; a < as.coord_dim(); ++a) {
        AlgElement ga = apply(g, AlgElement::matrix_unit(as, a));
        lhs_cache.push_back(side == Side::Left ? mul(sigma, ga) : mul(ga, sigma));
    }
    std::vector<AlgElement> rhs_cache;
    for (int b = 0; b < bs.coord_dim(); ++b) {
        AlgElement fb = apply(f, AlgElement::matrix_unit(bs, b));
        rhs_cache.push_back(side == Side::Left ? mul(fb, rho) : mul(rho, fb));
    }
    for (int a = 0; a < as.coord_dim(); ++a) {
        const auto ua = as.unit(a);
        for (int b = 0; b < bs.coord_dim(); ++b) {
            const auto ub = bs.unit(b);
            Complex lhs = pair_with_unit(lhs_cache[static_cast<size_t>(a)], ub);
            Complex rhs = pair_with_unit(rhs_cache[static_cast<size_t>(b)], ua);
            if (!scalar_close(lhs, rhs, 1.0, tol)) {
                return PropertyReport::fail(
                    name, tol.eq,
                    Witness{"(A, B) basis pair", {AlgElement::matrix_unit(as, a), AlgElement::matrix_unit(bs, b)}},
                    "xi side " + fmt(lhs) + ", omega side " + fmt(rhs));
            }
        }
    }
    return PropertyReport::pass(name, tol.eq);
}

PropertyReport petz_exists(const BayesProblem &prob, const Tolerance &tol) {
    if (!prob.xi.faithful()) {
        throw Error(ErrorKind::SupportNotFull, "pulled-back state is not faithful");
    }
    const Channel &f = prob.f;
    const AlgElement &sigma = prob.xi.density();
    const AlgElement &rho = prob.omega.density();
    for (const auto &b : matrix_units(f.domain())) {
        AlgElement lhs = mul(apply(f, mul(sigma, b)), rho);
        AlgElement rhs = mul(rho, apply(f, mul(b, sigma)));
        if (!approx_zero(lhs - rhs, std::max(frob(lhs), frob(rhs)), tol)) {
            return PropertyReport::fail("petz", tol.eq, Witness{"F(sigma B) rho != rho F(B sigma)", {b}},
                                        "lhs " + to_string(lhs) + ", rhs " + to_string(rhs));
        }
    }
    return PropertyReport::pass("petz", tol.eq, "CPU Bayesian inverse exists");
}

Channel petz_recovery(const BayesProblem &prob, const Tolerance &tol) {
    const Channel fstar = hs_adjoint(prob.f);
    const AlgElement root_sigma_hat = sqrt_elem(pinv_global(prob.xi.density(), tol), tol);
    const AlgElement root_rho = sqrt_elem(prob.omega.density(), tol);
    return from_function(prob.f.codomain(), prob.f.domain(), [&](const AlgElement &a) {
        AlgElement inner = apply(fstar, mul(mul(root_rho, a), root_rho));
        return mul(mul(root_sigma_hat, inner), root_sigma_hat);
    });
}

PropertyReport verify_disintegration(const Channel &f, const State &omega, const Channel &g, const Tolerance &tol) {
    if (g.domain() != f.codomain() || g.codomain() != f.domain()) {
        throw Error(ErrorKind::ShapeMismatch, "verify_disintegration needs F: B -> A and G: A -> B");
    }
    State xi = pullback_state(omega, f, tol);
    PropertyReport preserve = PropertyReport::pass("state-preserving: xi∘G = omega", tol.eq);
    for (const auto &e : matrix_units(f.codomain())) {
        Complex lhs = xi(apply(g, e));
        Complex rhs = omega(e);
        if (!scalar_close(lhs, rhs, 1.0, tol)) {
            preserve = PropertyReport::fail(preserve.property, tol.eq, Witness{"basis element A", {e}},
                                            "xi(G(A)) = " + fmt(lhs) + ", omega(A) = " + fmt(rhs));
            break;
        }
    }
    PropertyReport inverse = ae_equal(compose(g, f), identity_channel(f.domain()), xi, Side::Right, tol);
    inverse.property = "G∘F ≍ id (right)";
    return combine("disintegration", {preserve, inverse});
}

Channel commutative_disintegration(const Channel &f, const State &omega, const Tolerance &tol) {
    const AlgebraShape &as = f.codomain();
    const AlgebraShape &bs = f.domain();
    if (!as.is_commutative()) {
        throw Error(ErrorKind::NotCommutative, "codomain " + as.to_string() + " is not commutative");
    }
    if (!ae_deterministic(f, omega, Side::Right, tol).passed()) {
        throw Error(ErrorKind::NotAeDeterministic, "F is not right omega-a.e. deterministic");
    }
    const int nx = as.num_blocks();
    std::vector<double> p(static_cast<size_t>(nx));
    for (int x = 0; x < nx; ++x) {
        p[static_cast<size_t>(x)] = omega.density().block(x)(0, 0).real();
    }
    const AlgElement &supp = omega.support();

    // For each supported point x, the block y(x) on which ev_x∘F lives.
    std::vector<int> target(static_cast<size_t>(nx), -1);
    std::vector<double> q(static_cast<size_t>(bs.num_blocks()), 0.0);
    for (int x = 0; x < nx; ++x) {
        if (std::abs(supp.block(x)(0, 0)) < 0.5) {
            continue;
        }
        for (int y = 0; y < bs.num_blocks(); ++y) {
            AlgElement unit_y(bs);
            unit_y.block(y).setIdentity();
            double mass = std::abs(apply(f, unit_y).block(x)(0, 0));
            if (mass > 0.5) {
                if (bs.block(y) != 1) {
                    throw Error(ErrorKind::NonscalarImageBlock,
                                "support point " + std::to_string(x) + " is carried by block " + std::to_string(y) +
                                    " of dimension " + std::to_string(bs.block(y)));
                }
                target[static_cast<size_t>(x)] = y;
                q[static_cast<size_t>(y)] += p[static_cast<size_t>(x)];
            }
        }
    }
    const double nx_total = as.total_dim();
    std::vector<bool> live(static_cast<size_t>(bs.num_blocks()), false);
    for (int y = 0; y < bs.num_blocks(); ++y) {
        live[static_cast<size_t>(y)] = q[static_cast<size_t>(y)] > tol.rank;
    }
    return from_function(as, bs, [&](const AlgElement &a) {
        AlgElement out(bs);
        const Complex tau = trace(a) / nx_total;
        for (int y = 0; y < bs.num_blocks(); ++y) {
            if (!live[static_cast<size_t>(y)]) {
                out.block(y).setIdentity();
                out.block(y) *= tau;
            }
        }
        for (int x = 0; x < nx; ++x) {
            int y = target[static_cast<size_t>(x)];
            if (y >= 0 && live[static_cast<size_t>(y)]) {
                out.block(y)(0, 0) += p[static_cast<size_t>(x)] * a.block(x)(0, 0) / q[static_cast<size_t>(y)];
            }
        }
        return out;
    });
}

PropertyReport ModularityReport::summary() const {
    PropertyReport r = combine("modularity-chain", {bayes, ae_det});
    r.detail = violation() ? "chain violation: " + r.detail : "both consequences hold";
    return r;
}

ModularityReport modularity_chain(const Channel &f, const State &omega, const Channel &g, const Tolerance &tol) {
    PropertyReport disint = verify_disintegration(f, omega, g, tol);
    if (!disint.passed()) {
        throw Error(ErrorKind::PreconditionsUnmet, "not a disintegration: " + disint.detail);
    }
    PropertyReport fcpu = is_cpu(f, tol);
    if (!fcpu.passed()) {
        throw Error(ErrorKind::PreconditionsUnmet, "F is not CPU: " + fcpu.detail);
    }
    PropertyReport gcpu = is_cpu(g, tol);
    if (!gcpu.passed()) {
        throw Error(ErrorKind::PreconditionsUnmet, "G is not CPU: " + gcpu.detail);
    }
    State xi = pullback_state(omega, f, tol);
    return ModularityReport{verify_bayes(f, omega, xi, g, Side::Left, tol),
                            ae_deterministic(f, omega, Side::Right, tol)};
}

}  // namespace qmarkov
