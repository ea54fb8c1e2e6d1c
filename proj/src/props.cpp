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

#include "qmarkov/props.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qmarkov/bayes.hpp"
#include "qmarkov/error.hpp"
#include "qmarkov/finstoch.hpp"

namespace qmarkov {

namespace {

int pick(Rng &rng, int lo, int hi) {
    if (hi < lo) {
        hi = lo;
    }
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform(Rng &rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

bool coin(Rng &rng, double p = 0.5) { return uniform(rng, 0, 1) < p; }

std::string num(Complex z) {
    std::ostringstream os;
    os << std::setprecision(10);
    if (z.imag() == 0) {
        os << z.real();
    } else {
        os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    return os.str();
}

bool close(Complex a, Complex b, double scale, const Tolerance &tol) {
    return std::abs(a - b) <= tol.eq * std::max(1.0, scale);
}

ComplexMatrix diag_blocks(const std::vector<ComplexMatrix> &blocks) {
    Eigen::Index n = 0;
    for (const auto &b : blocks) {
        n += b.rows();
    }
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    Eigen::Index at = 0;
    for (const auto &b : blocks) {
        out.block(at, at, b.rows(), b.cols()) = b;
        at += b.rows();
    }
    return out;
}

/// (id (x) tau)(X) for X on C^n (x) C^k: result(i, j) = sum_ac tau(a, c) X(ik + c, jk + a).
ComplexMatrix partial_trace_against(const ComplexMatrix &x, const ComplexMatrix &tau) {
    const Eigen::Index k = tau.rows();
    const Eigen::Index n = x.rows() / k;
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex s = 0;
            for (Eigen::Index a = 0; a < k; ++a) {
                for (Eigen::Index c = 0; c < k; ++c) {
                    s += tau(a, c) * x(i * k + c, j * k + a);
                }
            }
            out(i, j) = s;
        }
    }
    return out;
}

std::string elem(const AlgElement &a) { return to_string(a, 4); }

TrialOutcome from_report(const PropertyReport &r, const std::string &context) {
    if (r.passed()) {
        return TrialOutcome::pass();
    }
    return TrialOutcome::fail(context + ": " + r.property + " " + describe(r));
}

/// Probability vector with random zeros, at least one entry positive.
std::vector<double> random_prob(Rng &rng, int n, bool allow_zeros) {
    std::vector<double> p(static_cast<size_t>(n));
    double total = 0;
    for (auto &v : p) {
        v = (allow_zeros && coin(rng, 0.3)) ? 0.0 : uniform(rng, 0.05, 1.0);
        total += v;
    }
    if (total == 0) {
        p[0] = 1;
        total = 1;
    }
    for (auto &v : p) {
        v /= total;
    }
    return p;
}

/// Small-integer weights normalized exactly. Zeros allowed.
std::vector<Rational> random_rational_prob(Rng &rng, int n) {
    std::vector<int> w(static_cast<size_t>(n));
    int total = 0;
    for (auto &v : w) {
        v = pick(rng, 0, 5);
        total += v;
    }
    if (total == 0) {
        w[0] = 1;
        total = 1;
    }
    std::vector<Rational> p;
    for (int v : w) {
        p.emplace_back(v, total);
    }
    return p;
}

StochasticMatrix<Rational> random_rational_kernel(Rng &rng, int ny, int nx) {
    std::vector<Rational> e(static_cast<size_t>(ny * nx));
    for (int x = 0; x < nx; ++x) {
        auto col = random_rational_prob(rng, ny);
        for (int y = 0; y < ny; ++y) {
            e[static_cast<size_t>(y * nx + x)] = col[static_cast<size_t>(y)];
        }
    }
    return StochasticMatrix<Rational>(ny, nx, std::move(e));
}

std::vector<int> random_function(Rng &rng, int nx, int ny) {
    std::vector<int> fn(static_cast<size_t>(nx));
    for (auto &v : fn) {
        v = pick(rng, 0, ny - 1);
    }
    return fn;
}

/// Example-6.4-type map: A -> W diag(A, phi(A)) W* with phi a random CPU map.
Channel padded_map(Rng &rng, int n, int extra, const ComplexMatrix &w) {
    const AlgebraShape sn = AlgebraShape::matrix(n);
    const AlgebraShape se = AlgebraShape::matrix(extra);
    const AlgebraShape sm = AlgebraShape::matrix(n + extra);
    const Channel phi = random_cpu(rng, sn, se);
    return from_function(sn, sm, [phi, w, sm](const AlgElement &a) {
        ComplexMatrix d = diag_blocks({a.block(0), apply(phi, a).block(0)});
        return AlgElement(sm, {w * d * w.adjoint()});
    });
}

// ---------------------------------------------------------------------------
// matrix-kernel

TrialOutcome eig_reconstruct(Rng &rng, int md, const Tolerance &tol) {
    const int n = pick(rng, 1, md);
    const ComplexMatrix m = random_hermitian(rng, n) * std::pow(10.0, uniform(rng, -2, 2));
    const HermEig e = herm_eig(m, tol);
    ComplexMatrix lam = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        lam(i, i) = e.values[static_cast<size_t>(i)];
    }
    const double bound = 1e-11 * std::max(1.0, op_norm(m));
    const double res = max_abs(e.vectors * lam * e.vectors.adjoint() - m);
    const double orth = max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(n, n));
    if (res > bound || orth > 1e-11) {
        return TrialOutcome::fail("n=" + std::to_string(n) + " residual " + num(res) + " orthogonality " + num(orth));
    }
    return TrialOutcome::pass();
}

TrialOutcome pinv_moore_penrose(Rng &rng, int md, const Tolerance &tol) {
    const int n = pick(rng, 1, md);
    const int r = pick(rng, 1, n);
    const ComplexMatrix s = random_density(rng, n, r) * std::pow(10.0, uniform(rng, -2, 2));
    const ComplexMatrix p = pinv_psd(s, tol.rank, tol);
    const double d1 = max_abs(s * p * s - s);
    const double d2 = max_abs(p * s * p - p);
    if (d1 > 1e-10 * std::max(1.0, op_norm(s)) || d2 > 1e-10 * std::max(1.0, op_norm(p))) {
        return TrialOutcome::fail("n=" + std::to_string(n) + " rank " + std::to_string(r) + ": |s p s - s| = " +
                                  num(d1) + ", |p s p - p| = " + num(d2));
    }
    return TrialOutcome::pass();
}

TrialOutcome opnorm_submultiplicative(Rng &rng, int md, const Tolerance &) {
    const int n = pick(rng, 1, md);
    const ComplexMatrix a = random_gaussian(rng, n, n);
    const ComplexMatrix b = random_gaussian(rng, n, n);
    const double lhs = op_norm(a * b);
    const double rhs = op_norm(a) * op_norm(b);
    if (lhs > rhs + 1e-9) {
        return TrialOutcome::fail("n=" + std::to_string(n) + ": |AB| = " + num(lhs) + " > |A||B| = " + num(rhs));
    }
    return TrialOutcome::pass();
}

// ---------------------------------------------------------------------------
// finalg

TrialOutcome algebra_laws(Rng &rng, int md, const Tolerance &tol) {
    const AlgebraShape s = random_shape(rng, md);
    const AlgElement a = random_element(rng, s), b = random_element(rng, s), c = random_element(rng, s);
    const AlgElement one = AlgElement::identity(s);
    if (!approx_equal(mul(one, a), a, tol) || !approx_equal(mul(a, one), a, tol)) {
        return TrialOutcome::fail("unit law on " + s.to_string() + " a = " + elem(a));
    }
    const AlgElement l = mul(mul(a, b), c), r = mul(a, mul(b, c));
    if (!approx_equal(l, r, tol)) {
        return TrialOutcome::fail("associativity on " + s.to_string() + ": " + elem(l) + " vs " + elem(r));
    }
    const int i = pick(rng, 0, s.coord_dim() - 1), j = pick(rng, 0, s.coord_dim() - 1);
    const auto ui = s.unit(i), uj = s.unit(j);
    AlgElement expected(s);
    if (ui.block == uj.block && ui.col == uj.row) {
        expected = AlgElement::matrix_unit(s, s.coord(ui.block, ui.row, uj.col));
    }
    const AlgElement prod = mul(AlgElement::matrix_unit(s, i), AlgElement::matrix_unit(s, j));
    if (max_abs(prod - expected) != 0) {
        return TrialOutcome::fail("matrix units " + std::to_string(i) + ", " + std::to_string(j) + " on " +
                                  s.to_string() + ": " + elem(prod));
    }
    return TrialOutcome::pass();
}

TrialOutcome star_coherence(Rng &rng, int md, const Tolerance &tol) {
    const AlgebraShape s = random_shape(rng, md);
    const AlgElement a = random_element(rng, s), b = random_element(rng, s);
    if (!approx_equal(adjoint(mul(a, b)), mul(adjoint(b), adjoint(a)), tol)) {
        return TrialOutcome::fail("(ab)* != b*a* on " + s.to_string() + ", a = " + elem(a) + ", b = " + elem(b));
    }
    if (max_abs(adjoint(adjoint(a)) - a) != 0) {
        return TrialOutcome::fail("a** != a for a = " + elem(a));
    }
    return TrialOutcome::pass();
}

TrialOutcome tensor_multiplicative(Rng &rng, int md, const Tolerance &tol) {
    const AlgebraShape s1 = random_shape(rng, std::min(md, 3));
    const AlgebraShape s2 = random_shape(rng, std::min(md, 3));
    const AlgElement a = random_element(rng, s1), a2 = random_element(rng, s1);
    const AlgElement b = random_element(rng, s2), b2 = random_element(rng, s2);
    const AlgElement l = mul(tensor_elem(a, b), tensor_elem(a2, b2));
    const AlgElement r = tensor_elem(mul(a, a2), mul(b, b2));
    if (!approx_equal(l, r, tol)) {
        return TrialOutcome::fail("(a(x)b)(a'(x)b') != aa'(x)bb' on " + s1.to_string() + " (x) " + s2.to_string());
    }
    return TrialOutcome::pass();
}

// ---------------------------------------------------------------------------
// channel

TrialOutcome hs_adjoint_compose(Rng &rng, int md, const Tolerance &tol) {
    const AlgebraShape s1 = random_shape(rng, md), s2 = random_shape(rng, md), s3 = random_shape(rng, md);
    const Channel f(s2, s1, random_gaussian(rng, s1.coord_dim(), s2.coord_dim()));
    const Channel g(s3, s2, random_gaussian(rng, s2.coord_dim(), s3.coord_dim()));
    const ComplexMatrix l = hs_adjoint(compose(f, g)).matrix();
    const ComplexMatrix r = compose(hs_adjoint(g), hs_adjoint(f)).matrix();
    const double scale = std::max(1.0, op_norm(l));
    if (max_abs(l - r) > tol.eq * scale) {
        return TrialOutcome::fail("shapes " + s1.to_string() + ", " + s2.to_string() + ", " + s3.to_string() +
                                  ": deviation " + num(max_abs(l - r)));
    }
    return TrialOutcome::pass();
}

TrialOutcome cp_closure(Rng &rng, int md, const Tolerance &tol) {
    const int m = std::min(md, 3);
    const AlgebraShape s1 = random_shape(rng, m), s2 = random_shape(rng, m), s3 = random_shape(rng, m);
    const Channel f = random_cpu(rng, s2, s1);
    const Channel g = random_cpu(rng, s3, s2);
    const std::string ctx = "F: " + s2.to_string() + " -> " + s1.to_string() + ", G: " + s3.to_string() + " -> " +
                            s2.to_string();
    if (!is_cp(f, tol).passed() || !is_cp(g, tol).passed()) {
        return TrialOutcome::fail(ctx + ": generator produced a non-CP map");
    }
    PropertyReport c = is_cp(compose(f, g), tol);
    if (!c.passed()) {
        return from_report(c, ctx + ", F∘G");
    }
    return from_report(is_cp(tensor(f, g), tol), ctx + ", F(x)G");
}

TrialOutcome multiplicative_domain(Rng &rng, int md, const Tolerance &tol) {
    const int n = pick(rng, 2, md);
    // Partition n into consecutive blocks; F is a Schur multiplier that is
    // the identity on block-diagonal matrices, followed by Ad_W.
    std::vector<int> parts;
    for (int left = n; left > 0;) {
        int b = pick(rng, 1, left);
        parts.push_back(b);
        left -= b;
    }
    const int terms = pick(rng, 2, 3);
    std::vector<double> p = random_prob(rng, terms, false);
    const ComplexMatrix w = random_unitary(rng, n);
    std::vector<ComplexMatrix> kraus;
    for (int t = 0; t < terms; ++t) {
        ComplexMatrix d = ComplexMatrix::Zero(n, n);
        int at = 0;
        for (int b : parts) {
            const double phase = uniform(rng, 0, 2 * M_PI);
            d.block(at, at, b, b) = std::polar(1.0, phase) * ComplexMatrix::Identity(b, b);
            at += b;
        }
        kraus.push_back(std::sqrt(p[static_cast<size_t>(t)]) * d * w);
    }
    const AlgebraShape s = AlgebraShape::matrix(n);
    const Channel f = kraus_channel(s, s, kraus);
    ComplexMatrix bm = ComplexMatrix::Zero(n, n);
    int at = 0;
    for (int b : parts) {
        bm.block(at, at, b, b) = random_gaussian(rng, b, b);
        at += b;
    }
    const AlgElement b = AlgElement::from_matrix(bm);
    const AlgElement fb = apply(f, b);
    if (!approx_equal(apply(f, mul(adjoint(b), b)), mul(adjoint(fb), fb), tol)) {
        return TrialOutcome::skip("B not in the multiplicative domain");
    }
    for (int k = 0; k < 4; ++k) {
        const AlgElement c = random_element(rng, s);
        const AlgElement fc = apply(f, c);
        if (!approx_equal(apply(f, mul(adjoint(b), c)), mul(adjoint(fb), fc), tol) ||
            !approx_equal(apply(f, mul(adjoint(c), b)), mul(adjoint(fc), fb), tol)) {
            return TrialOutcome::fail("n=" + std::to_string(n) + ", B = " + elem(b) + ", C = " + elem(c));
        }
    }
    return TrialOutcome::pass();
}

TrialOutcome invertible_deterministic(Rng &rng, int md, const Tolerance &tol) {
    const int n = pick(rng, 1, md);
    const Channel f = ad(random_unitary(rng, n));
    const Channel inv = invert(f);
    const std::string ctx = "Ad_U on M" + std::to_string(n);
    for (const auto &r : {is_deterministic(f, tol), is_deterministic(inv, tol)}) {
        if (!r.passed()) {
            return from_report(r, ctx);
        }
    }
    if (max_abs(compose(inv, f).matrix() - ComplexMatrix::Identity(n * n, n * n)) > tol.eq) {
        return TrialOutcome::fail(ctx + ": invert is not a two-sided inverse");
    }
    if (n >= 2) {
        const Channel t = transpose_channel(AlgebraShape::matrix(n));
        invert(t);
        if (is_deterministic(t, tol).passed()) {
            return TrialOutcome::fail("transpose on M" + std::to_string(n) + " reported deterministic");
        }
        if (is_schwarz_sampled(t, 16, rng(), tol).passed()) {
            return TrialOutcome::fail("transpose on M" + std::to_string(n) + " reported Schwarz-positive");
        }
    }
    return TrialOutcome::pass();
}

TrialOutcome s_positivity_suite(Rng &rng, int md, const Tolerance &tol) {
    const int n = pick(rng, 1, std::max(1, std::min(3, md / 2)));
    const int k = pick(rng, 2, std::max(2, md / n));
    const int nk = n * k;
    const ComplexMatrix u = random_unitary(rng, nk);
    const ComplexMatrix w = random_unitary(rng, n);
    const std::vector<double> p = random_prob(rng, k, true);
    const AlgebraShape sn = AlgebraShape::matrix(n), snk = AlgebraShape::matrix(nk);
    // g: C -> U (W* C W (x) 1) U*, f: B -> W (sum p_j V_j* B V_j) W*.
    const Channel g = from_function(sn, snk, [&](const AlgElement &c) {
        const ComplexMatrix inner = w.adjoint() * c.block(0) * w;
        return AlgElement(snk, {u * kron(inner, ComplexMatrix::Identity(k, k)) * u.adjoint()});
    });
    std::vector<ComplexMatrix> kraus;
    for (int j = 0; j < k; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(k, 1);
        e(j, 0) = 1;
        kraus.push_back(std::sqrt(p[static_cast<size_t>(j)]) * u * kron(ComplexMatrix::Identity(n, n), e) *
                        w.adjoint());
    }
    const Channel f = kraus_channel(snk, sn, kraus);
    const std::string ctx = "n=" + std::to_string(n) + ", k=" + std::to_string(k);
    PropertyReport cpu = combine("cpu", {is_cpu(f, tol), is_cpu(g, tol)});
    if (!cpu.passed()) {
        return from_report(cpu, ctx + " generator");
    }
    return from_report(s_positivity(f, g, tol), ctx);
}

// ---------------------------------------------------------------------------
// state-ae

TrialOutcome support_minimality(Rng &rng, int md, const Tolerance &tol) {
    const AlgebraShape s = random_shape(rng, md);
    const State omega(random_density(rng, s, false), tol);
    const AlgElement p = omega.support();
    const auto basis = matrix_units(s);
    auto preserves = [&](const AlgElement &q) {
        for (const auto &a : basis) {
            if (!close(omega(mul(mul(q, a), q)), omega(a), 1.0, tol)) {
                return false;
            }
        }
        return true;
    };
    if (!preserves(p) || !close(omega(p), 1.0, 1.0, tol)) {
        return TrialOutcome::fail("support does not carry the state: rho = " + elem(omega.density()));
    }
    const AlgElement perp = omega.support_complement();
    const AlgElement y = random_positive(rng, s);
    const AlgElement bigger = support(omega.density() + mul(mul(perp, y), perp), tol);
    const AlgElement other = support(random_positive(rng, s), tol);
    for (const auto &q : {bigger, other}) {
        if (preserves(q) && !approx_equal(mul(q, p), p, tol)) {
            return TrialOutcome::fail("Q = " + elem(q) + " carries the state but QP != P, P = " + elem(p));
        }
    }
    if (!preserves(bigger)) {
        return TrialOutcome::fail("Q >= P does not carry the state: Q = " + elem(bigger));
    }
    return TrialOutcome::pass();
}

TrialOutcome nullspace_equivalence(Rng &rng, int md, const Tolerance &tol) {
    const AlgebraShape s = random_shape(rng, md);
    const State omega(random_density(rng, s, false), tol);
    const AlgElement p = omega.support();
    const AlgElement a = mul(random_element(rng, s), omega.support_complement());
    const double scale = std::max(1.0, norm(a) * norm(a));
    if (!approx_zero(mul(a, p), norm(a), tol) || std::abs(omega(mul(adjoint(a), a))) > tol.eq * scale) {
        return TrialOutcome::fail("A = M P_perp is not null: A = " + elem(a));
    }
    // Outside the nullspace, omega(M*M) >= lambda_min^+ |M P|_F^2.
    const AlgElement m = random_element(rng, s);
    double lam_min = 1e300;
    for (int b = 0; b < s.num_blocks(); ++b) {
        for (double v : herm_eig(omega.density().block(b), tol).values) {
            if (v > tol.rank * 1.0) {
                lam_min = std::min(lam_min, v);
            }
        }
    }
    double mp2 = 0;
    const AlgElement mp = mul(m, p);
    for (const auto &blk : mp.blocks()) {
        mp2 += blk.squaredNorm();
    }
    const double val = omega(mul(adjoint(m), m)).real();
    if (val < lam_min * mp2 * (1 - 1e-9) - tol.eq) {
        return TrialOutcome::fail("omega(M*M) = " + num(val) + " below lambda_min |MP|^2 = " + num(lam_min * mp2));
    }
    return TrialOutcome::pass();
}

TrialOutcome weak_ae_multiplication(Rng &rng, int md, const Tolerance &tol) {
    const int n = pick(rng, 1, std::max(1, md - 1));
    const int extra = pick(rng, 1, std::max(1, md - n));
    const int m = n + extra;
    const ComplexMatrix w = random_unitary(rng, m);
    const Channel f = padded_map(rng, n, extra, w);
    // Half of the instances leak mass outside the embedded corner.
    const bool leak = coin(rng);
    ComplexMatrix rho = ComplexMatrix::Zero(m, m);
    if (leak) {
        rho = random_density(rng, m, pick(rng, 1, m));
    } else {
        rho.topLeftCorner(n, n) = random_density(rng, n, pick(rng, 1, n));
    }
    const State omega(AlgElement::from_matrix(w * rho * w.adjoint()), tol);
    const AlgElement p = omega.support();
    const AlgebraShape sn = AlgebraShape::matrix(n);
    bool quadratic = true;
    for (int t = 0; t < 128 && quadratic; ++t) {
        const AlgElement b = random_element(rng, sn);
        const AlgElement fb = apply(f, b);
        const AlgElement lhs = mul(apply(f, mul(adjoint(b), b)), p);
        const AlgElement rhs = mul(mul(adjoint(fb), fb), p);
        quadratic = approx_equal(lhs, rhs, tol);
    }
    const PropertyReport right = ae_deterministic(f, omega, Side::Right, tol);
    if (quadratic != right.passed()) {
        return TrialOutcome::fail("n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                                  (quadratic ? ": quadratic identity holds but " : ": quadratic identity fails but ") +
                                  describe(right));
    }
    return TrialOutcome::pass();
}

TrialOutcome ae_left_right_symmetry(Rng &rng, int md, const Tolerance &tol) {
    const AlgebraShape dom = random_shape(rng, md);
    const AlgebraShape cod = random_shape(rng, md);
    const State omega(random_density(rng, cod, false), tol);
    const AlgElement p = omega.support();
    const AlgElement q = omega.support_complement();
    const Channel f = random_star_map(rng, dom, cod);
    const Channel x = random_star_map(rng, dom, cod);
    const int kind = pick(rng, 0, 3);
    Channel g = f;
    if (kind == 1) {
        g = add(f, from_function(dom, cod, [&](const AlgElement &b) { return mul(mul(q, apply(x, b)), q); }));
    } else if (kind == 2) {
        g = add(f, from_function(dom, cod, [&](const AlgElement &b) {
                    return mul(mul(q, apply(x, b)), p) + mul(mul(p, apply(x, b)), q);
                }));
    } else if (kind == 3) {
        g = add(f, x);
    }
    const std::string ctx = "kind " + std::to_string(kind) + ", " + dom.to_string() + " -> " + cod.to_string();
    const PropertyReport l = ae_equal(f, g, omega, Side::Left, tol);
    const PropertyReport r = ae_equal(f, g, omega, Side::Right, tol);
    if (l.passed() != r.passed()) {
        return TrialOutcome::fail(ctx + ": ae-equal left " + describe(l) + ", right " + describe(r));
    }
    // a.e. determinism: a *-homomorphism perturbed off the support, or a
    // padded map, or a generic *-preserving map.
    Channel h = f;
    if (dom.num_blocks() == 1 && cod.num_blocks() == 1 && cod.block(0) > dom.block(0) && coin(rng)) {
        const int n = dom.block(0), m = cod.block(0);
        h = padded_map(rng, n, m - n, random_unitary(rng, m));
    } else if (coin(rng)) {
        h = from_function(dom, cod, [&](const AlgElement &b) { return mul(mul(q, apply(x, b)), q); });
    }
    const PropertyReport dl = ae_deterministic(h, omega, Side::Left, tol);
    const PropertyReport dr = ae_deterministic(h, omega, Side::Right, tol);
    if (dl.passed() != dr.passed()) {
        return TrialOutcome::fail(ctx + ": ae-det left " + describe(dl) + ", right " + describe(dr));
    }
    return TrialOutcome::pass();
}

// ---------------------------------------------------------------------------
// bayes

struct CpuProblem {
    Channel f;
    State omega;
};

CpuProblem random_cpu_problem(Rng &rng, int md, const Tolerance &tol) {
    const AlgebraShape b = random_shape(rng, md);
    const AlgebraShape a = random_shape(rng, md);
    return {random_cpu(rng, b, a), State(random_density(rng, a, false), tol)};
}

TrialOutcome bayes_state_preservation(Rng &rng, int md, const Tolerance &tol) {
    const CpuProblem cp = random_cpu_problem(rng, md, tol);
    const BayesProblem prob = BayesProblem::make(cp.f, cp.omega, tol);
    const Channel g = bayes_candidate(prob, tol).g;
    for (const auto &e : matrix_units(cp.omega.shape())) {
        const Complex l = prob.xi(apply(g, e)), r = cp.omega(e);
        if (!close(l, r, 1.0, tol)) {
            return TrialOutcome::fail(cp.f.domain().to_string() + " -> " + cp.f.codomain().to_string() +
                                      ": xi(G(E)) = " + num(l) + " vs omega(E) = " + num(r) + " at E = " + elem(e));
        }
    }
    return TrialOutcome::pass();
}

TrialOutcome bayes_left_uniqueness(Rng &rng, int md, const Tolerance &tol) {
    const CpuProblem cp = random_cpu_problem(rng, md, tol);
    const BayesProblem prob = BayesProblem::make(cp.f, cp.omega, tol);
    const Channel g1 = bayes_candidate(prob, tol).g;
    // A second left Bayes map: add anything living under the complement of
    // the support of xi.
    const AlgElement q = prob.xi.support_complement();
    const Channel z(cp.omega.shape(), prob.xi.shape(),
                    random_gaussian(rng, prob.xi.shape().coord_dim(), cp.omega.shape().coord_dim()));
    const Channel g2 = add(g1, from_function(cp.omega.shape(), prob.xi.shape(),
                                             [&](const AlgElement &a) { return mul(q, apply(z, a)); }));
    const std::string ctx = cp.f.domain().to_string() + " -> " + cp.f.codomain().to_string();
    for (const Channel *g : {&g1, &g2}) {
        PropertyReport r = verify_bayes(cp.f, cp.omega, prob.xi, *g, Side::Left, tol);
        if (!r.passed()) {
            return from_report(r, ctx + " Bayes map");
        }
    }
    return from_report(ae_equal(g1, g2, prob.xi, Side::Left, tol), ctx);
}

/// Problems whose candidate is *-preserving: product states under an
/// ancilla embedding, and embedded classical kernels.
struct StarBayes {
    Channel f;
    State omega;
};

StarBayes random_star_bayes(Rng &rng, int md, const Tolerance &tol) {
    if (coin(rng) && md >= 2) {
        const int n = pick(rng, 1, std::max(1, md / 2));
        const int k = pick(rng, 1, std::max(1, md / n));
        const ComplexMatrix u = random_unitary(rng, n * k);
        const AlgebraShape sn = AlgebraShape::matrix(n), snk = AlgebraShape::matrix(n * k);
        const Channel f = from_function(sn, snk, [&](const AlgElement &b) {
            return AlgElement(snk, {u * kron(b.block(0), ComplexMatrix::Identity(k, k)) * u.adjoint()});
        });
        const ComplexMatrix rho =
            u * kron(random_density(rng, n, pick(rng, 1, n)), random_density(rng, k, pick(rng, 1, k))) * u.adjoint();
        return {f, State(AlgElement::from_matrix(rho), tol)};
    }
    const int nx = pick(rng, 1, md), ny = pick(rng, 1, md);
    std::vector<double> e;
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            e.push_back(0);
        }
    }
    for (int x = 0; x < nx; ++x) {
        auto col = random_prob(rng, ny, true);
        for (int y = 0; y < ny; ++y) {
            e[static_cast<size_t>(y * nx + x)] = col[static_cast<size_t>(y)];
        }
    }
    const StochasticMatrix<double> k(ny, nx, e);
    return {embed(k), embed_prob(ProbVector<double>(random_prob(rng, nx, true)), tol)};
}

TrialOutcome bayes_compositional(Rng &rng, int md, const Tolerance &tol) {
    {
        const AlgebraShape a = random_shape(rng, md), b = random_shape(rng, md), c = random_shape(rng, md);
        const Channel f1 = random_cpu(rng, b, a);
        const Channel f2 = random_cpu(rng, c, b);
        const State omega(random_density(rng, a, false), tol);
        const BayesProblem p1 = BayesProblem::make(f1, omega, tol);
        const BayesProblem p2 = BayesProblem::make(f2, p1.xi, tol);
        const Channel g1 = bayes_candidate(p1, tol).g;
        const Channel g2 = bayes_candidate(p2, tol).g;
        PropertyReport r = verify_bayes(compose(f1, f2), omega, p2.xi, compose(g2, g1), Side::Left, tol);
        if (!r.passed()) {
            return from_report(r, "composite " + c.to_string() + " -> " + b.to_string() + " -> " + a.to_string());
        }
    }
    const StarBayes sb = random_star_bayes(rng, md, tol);
    const BayesProblem prob = BayesProblem::make(sb.f, sb.omega, tol);
    const Channel g = bayes_candidate(prob, tol).g;
    if (!is_star_preserving(g, tol).passed()) {
        return TrialOutcome::skip("candidate not *-preserving");
    }
    const std::string ctx = "symmetric " + sb.f.domain().to_string() + " -> " + sb.f.codomain().to_string();
    PropertyReport fwd = verify_bayes(sb.f, sb.omega, prob.xi, g, Side::Left, tol);
    if (!fwd.passed()) {
        return from_report(fwd, ctx);
    }
    return from_report(verify_bayes(g, prob.xi, sb.omega, sb.f, Side::Left, tol), ctx + " reversed");
}

TrialOutcome bayes_ae_det_disintegration(Rng &rng, int md, const Tolerance &tol) {
    // Invertible maps: the inverse is a disintegration.
    {
        const int n = pick(rng, 1, md);
        const AlgebraShape s = AlgebraShape::matrix(n);
        const double p = uniform(rng, 0, 0.3);
        const Channel u = ad(random_unitary(rng, n));
        const Channel f = add(u, add(random_cpu(rng, s, s), u, -1.0), p);
        const State omega(random_density(rng, s, false), tol);
        Channel g = identity_channel(s);
        try {
            g = invert(f);
        } catch (const Error &) {
            return TrialOutcome::skip("perturbation singular");
        }
        PropertyReport r = verify_disintegration(f, omega, g, tol);
        if (!r.passed()) {
            return from_report(r, "inverse of an invertible CPU map on M" + std::to_string(n));
        }
    }
    const DisintegrationInstance inst = random_disintegration(rng, md, tol);
    const BayesProblem prob = BayesProblem::make(inst.f, inst.omega, tol);
    const Channel g = bayes_candidate(prob, tol).g;
    if (!ae_deterministic(inst.f, inst.omega, Side::Right, tol).passed() ||
        !verify_bayes(inst.f, inst.omega, prob.xi, g, Side::Left, tol).passed()) {
        return TrialOutcome::skip("hypotheses not met");
    }
    if (is_star_preserving(g, tol).passed()) {
        return from_report(verify_disintegration(inst.f, inst.omega, g, tol), inst.family);
    }
    // A candidate that is not *-preserving only satisfies the left-handed
    // version: G∘F - id vanishes under P_xi from the left.
    const PropertyReport left = ae_equal(compose(g, inst.f), identity_channel(inst.f.domain()), prob.xi, Side::Left, tol);
    return from_report(left, inst.family + " (candidate not *-preserving)");
}

TrialOutcome relative_conditional_expectation(Rng &rng, int md, const Tolerance &tol) {
    const DisintegrationInstance inst = random_disintegration(rng, md, tol);
    if (!verify_disintegration(inst.f, inst.omega, inst.g, tol).passed()) {
        return TrialOutcome::fail(inst.family + ": generator produced a non-disintegration");
    }
    const State xi = pullback_state(inst.omega, inst.f, tol);
    for (int t = 0; t < 4; ++t) {
        const AlgElement b = random_element(rng, inst.f.domain());
        const AlgElement fb = apply(inst.f, b);
        const Complex v0 = xi(mul(adjoint(b), b));
        const Complex v1 = xi(apply(inst.g, mul(adjoint(fb), fb)));
        const Complex v2 = xi(apply(inst.g, apply(inst.f, mul(adjoint(b), b))));
        const double scale = norm(b) * norm(b);
        if (!close(v0, v1, scale, tol) || !close(v0, v2, scale, tol)) {
            return TrialOutcome::fail(inst.family + ": xi(B*B) = " + num(v0) + ", xi(G(F(B)*F(B))) = " + num(v1) +
                                      ", xi(G(F(B*B))) = " + num(v2) + " at B = " + elem(b));
        }
    }
    return TrialOutcome::pass();
}

TrialOutcome relative_multiplication(Rng &rng, int md, const Tolerance &tol) {
    const DisintegrationInstance inst = random_disintegration(rng, md, tol);
    const State xi = pullback_state(inst.omega, inst.f, tol);
    const AlgElement a = apply(inst.f, random_element(rng, inst.f.domain()));
    const AlgElement ga = apply(inst.g, a);
    const double sa = norm(a) * norm(a);
    if (!close(xi(apply(inst.g, mul(adjoint(a), a))), xi(mul(adjoint(ga), ga)), sa, tol)) {
        return TrialOutcome::skip("A outside the relative multiplicative domain");
    }
    for (int t = 0; t < 4; ++t) {
        const AlgElement d = random_element(rng, inst.f.codomain());
        const AlgElement gd = apply(inst.g, d);
        const double scale = std::max(1.0, norm(a) * norm(d));
        const Complex l1 = xi(apply(inst.g, mul(adjoint(a), d))), r1 = xi(mul(adjoint(ga), gd));
        const Complex l2 = xi(apply(inst.g, mul(adjoint(d), a))), r2 = xi(mul(adjoint(gd), ga));
        if (!close(l1, r1, scale, tol) || !close(l2, r2, scale, tol)) {
            return TrialOutcome::fail(inst.family + ": xi(G(A*D)) = " + num(l1) + " vs " + num(r1) +
                                      ", xi(G(D*A)) = " + num(l2) + " vs " + num(r2) + ", A = " + elem(a) +
                                      ", D = " + elem(d));
        }
    }
    return TrialOutcome::pass();
}

TrialOutcome modularity_suite(Rng &rng, int md, const Tolerance &tol) {
    const DisintegrationInstance inst = random_disintegration(rng, md, tol);
    const ModularityReport rep = modularity_chain(inst.f, inst.omega, inst.g, tol);
    if (rep.violation()) {
        return from_report(rep.summary(), inst.family);
    }
    return TrialOutcome::pass();
}

// ---------------------------------------------------------------------------
// finstoch

TrialOutcome classical_bayes_exact(Rng &rng, int md, const Tolerance &tol) {
    const int nx = pick(rng, 1, md), ny = pick(rng, 1, md);
    const auto f = random_rational_kernel(rng, ny, nx);
    const ProbVector<Rational> p(random_rational_prob(rng, nx));
    const auto g = bayes_inverse(f, p);
    const auto q = push(f, p);
    PropertyReport diagram = verify_bayes_diagram(f, p, g, tol);
    if (!diagram.passed()) {
        return from_report(diagram, std::to_string(ny) + "x" + std::to_string(nx));
    }
    const auto back = push(g, q);
    for (int x = 0; x < nx; ++x) {
        if (back[x] != p[x]) {
            return TrialOutcome::fail("push(g, q) != p at x = " + std::to_string(x));
        }
    }
    // Changing g on the null set of q keeps it a.e. equal.
    std::vector<Rational> e = g.entries();
    for (int y = 0; y < ny; ++y) {
        if (q.in_null_set(y, 0)) {
            for (int x = 0; x < nx; ++x) {
                e[static_cast<size_t>(x * ny + y)] = x == 0 ? Rational(1) : Rational(0);
            }
        }
    }
    return from_report(ae_equal(g, StochasticMatrix<Rational>(nx, ny, e), q, tol), "null-set modification");
}

TrialOutcome embed_functorial(Rng &rng, int md, const Tolerance &tol) {
    const int nx = pick(rng, 1, md), ny = pick(rng, 1, md), nz = pick(rng, 1, md);
    const auto f = to_double(random_rational_kernel(rng, ny, nx));
    const auto g = to_double(random_rational_kernel(rng, nz, ny));
    const double dev = max_abs(embed(compose(g, f)).matrix() - compose(embed(f), embed(g)).matrix());
    if (dev > tol.eq) {
        return TrialOutcome::fail("embed(g∘f) != embed(f)∘embed(g), deviation " + num(dev));
    }
    return from_report(is_cpu(embed(f), tol), "embed(f)");
}

TrialOutcome classical_quantum_bayes(Rng &rng, int md, const Tolerance &tol) {
    const int nx = pick(rng, 1, md), ny = pick(rng, 1, md);
    const auto f = random_rational_kernel(rng, ny, nx);
    const ProbVector<Rational> p(random_rational_prob(rng, nx));
    const auto g = bayes_inverse(f, p);
    PropertyReport diagram = verify_bayes_diagram(f, p, g, tol);
    if (!diagram.passed()) {
        return from_report(diagram, "rational diagram");
    }
    const BayesProblem prob = BayesProblem::make(embed(to_double(f)), embed_prob(to_double(p), tol), tol);
    const Channel quantum = bayes_candidate(prob, tol).g;
    const Channel classical = embed(to_double(g));
    const AlgElement pxi = prob.xi.support();
    for (const auto &e : matrix_units(prob.omega.shape())) {
        const AlgElement lq = mul(apply(quantum, e), pxi);
        const AlgElement lc = mul(apply(classical, e), pxi);
        if (max_abs(lq - lc) > 1e-9) {
            return TrialOutcome::fail(std::to_string(ny) + "x" + std::to_string(nx) + " at E = " + elem(e) +
                                      ": quantum " + elem(lq) + " vs classical " + elem(lc));
        }
    }
    return TrialOutcome::pass();
}

TrialOutcome commutative_disintegration_suite(Rng &rng, int md, const Tolerance &tol) {
    const int nx = pick(rng, 1, md), ny = pick(rng, 1, md);
    const auto fn = random_function(rng, nx, ny);
    const auto k = StochasticMatrix<double>::from_function(ny, fn);
    const ProbVector<double> p(random_prob(rng, nx, true));
    const Channel f = embed(k);
    const State omega = embed_prob(p, tol);
    const Channel g = commutative_disintegration(f, omega, tol);
    const std::string ctx = std::to_string(nx) + " -> " + std::to_string(ny);
    PropertyReport r = verify_disintegration(f, omega, g, tol);
    if (!r.passed()) {
        return from_report(r, ctx);
    }
    const Channel classical = embed(disintegration(k, p, tol));
    const State xi = pullback_state(omega, f, tol);
    return from_report(ae_equal(g, classical, xi, Side::Right, tol), ctx + " vs classical formula");
}

std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

TrialOutcome run_trial(const Suite &suite, Rng &rng, int md, const Tolerance &tol) {
    try {
        return suite.trial(rng, md, tol);
    } catch (const std::exception &e) {
        return TrialOutcome::fail(std::string("threw ") + e.what());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Generators

Rng derived_rng(std::uint64_t seed, const std::string &label, std::uint64_t index) {
    const std::uint64_t h = fnv1a(label);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h),    static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

AlgebraShape random_shape(Rng &rng, int max_dim) {
    max_dim = std::max(1, max_dim);
    if (max_dim >= 2 && coin(rng, 0.3)) {
        const int a = pick(rng, 1, max_dim - 1);
        return AlgebraShape({a, pick(rng, 1, max_dim - a)});
    }
    return AlgebraShape::matrix(pick(rng, 1, max_dim));
}

Channel random_cpu(Rng &rng, const AlgebraShape &domain, const AlgebraShape &codomain) {
    int max_cod = 1;
    for (int n : codomain.blocks()) {
        max_cod = std::max(max_cod, n);
    }
    const int base = domain.total_dim();
    const int r = (max_cod + base - 1) / base + pick(rng, 0, 1);
    std::vector<ComplexMatrix> isos;
    for (int n : codomain.blocks()) {
        isos.push_back(random_isometry(rng, base * r, n));
    }
    return from_function(domain, codomain, [isos, r, codomain](const AlgElement &b) {
        std::vector<ComplexMatrix> parts;
        for (const auto &blk : b.blocks()) {
            parts.push_back(kron(blk, ComplexMatrix::Identity(r, r)));
        }
        const ComplexMatrix d = diag_blocks(parts);
        std::vector<ComplexMatrix> out;
        for (const auto &v : isos) {
            out.push_back(v.adjoint() * d * v);
        }
        return AlgElement(codomain, std::move(out));
    });
}

Channel random_star_map(Rng &rng, const AlgebraShape &domain, const AlgebraShape &codomain) {
    const Channel x(domain, codomain, random_gaussian(rng, codomain.coord_dim(), domain.coord_dim()));
    return from_function(domain, codomain, [x](const AlgElement &b) {
        return 0.5 * (apply(x, b) + adjoint(apply(x, adjoint(b))));
    });
}

DisintegrationInstance random_disintegration(Rng &rng, int max_dim, const Tolerance &tol) {
    max_dim = std::max(1, max_dim);
    const int family = pick(rng, 0, 2);
    if (family == 0) {
        const int n = pick(rng, 1, max_dim);
        const ComplexMatrix u = random_unitary(rng, n);
        return {"unitary conjugation on M" + std::to_string(n), ad(u),
                State(random_density(rng, AlgebraShape::matrix(n), false), tol), ad(u.adjoint())};
    }
    if (family == 1) {
        const int nb = max_dim >= 2 ? pick(rng, 1, 2) : 1;
        std::vector<int> ns, ks;
        int remaining = max_dim;
        for (int x = 0; x < nb; ++x) {
            const int avail = remaining - (nb - 1 - x);
            const int n = pick(rng, 1, avail);
            const int k = pick(rng, 1, avail / n);
            ns.push_back(n);
            ks.push_back(k);
            remaining -= n * k;
        }
        int total = 0;
        for (int x = 0; x < nb; ++x) {
            total += ns[static_cast<size_t>(x)] * ks[static_cast<size_t>(x)];
        }
        const AlgebraShape sb(ns);
        const AlgebraShape sa = AlgebraShape::matrix(total);
        const ComplexMatrix w = random_unitary(rng, total);
        std::vector<double> weights = random_prob(rng, nb, nb > 1);
        std::vector<ComplexMatrix> taus, rho_parts;
        for (int x = 0; x < nb; ++x) {
            const int n = ns[static_cast<size_t>(x)], k = ks[static_cast<size_t>(x)];
            taus.push_back(random_density(rng, k, pick(rng, 1, k)));
            rho_parts.push_back(weights[static_cast<size_t>(x)] *
                                kron(random_density(rng, n, pick(rng, 1, n)), taus.back()));
        }
        const State omega(AlgElement(sa, {w * diag_blocks(rho_parts) * w.adjoint()}), tol);
        const Channel f = from_function(sb, sa, [=](const AlgElement &b) {
            std::vector<ComplexMatrix> parts;
            for (int x = 0; x < nb; ++x) {
                parts.push_back(kron(b.block(x), ComplexMatrix::Identity(ks[static_cast<size_t>(x)],
                                                                         ks[static_cast<size_t>(x)])));
            }
            return AlgElement(sa, {w * diag_blocks(parts) * w.adjoint()});
        });
        const Channel g = from_function(sa, sb, [=](const AlgElement &a) {
            const ComplexMatrix inner = w.adjoint() * a.block(0) * w;
            std::vector<ComplexMatrix> out;
            int at = 0;
            for (int x = 0; x < nb; ++x) {
                const int d = ns[static_cast<size_t>(x)] * ks[static_cast<size_t>(x)];
                out.push_back(partial_trace_against(inner.block(at, at, d, d), taus[static_cast<size_t>(x)]));
                at += d;
            }
            return AlgElement(sb, std::move(out));
        });
        return {"block inclusion " + sb.to_string() + " -> " + sa.to_string(), f, omega, g};
    }
    const int nx = pick(rng, 1, max_dim), ny = pick(rng, 1, max_dim);
    const auto k = StochasticMatrix<double>::from_function(ny, random_function(rng, nx, ny));
    const ProbVector<double> p(random_prob(rng, nx, true));
    return {"embedded function " + std::to_string(nx) + " -> " + std::to_string(ny), embed(k), embed_prob(p, tol),
            embed(disintegration(k, p, tol))};
}

// ---------------------------------------------------------------------------
// Registry and runner

const std::vector<Suite> &suites() {
    static const std::vector<Suite> all = {
        {"eig-reconstruct", "matrix-kernel", "U diag(l) U* = m and U*U = 1 to 1e-11", 6, eig_reconstruct},
        {"pinv-moore-penrose", "matrix-kernel", "s p s = s and p s p = p for p = pinv(s)", 6, pinv_moore_penrose},
        {"opnorm-submultiplicative", "matrix-kernel", "|AB| <= |A||B|", 6, opnorm_submultiplicative},
        {"algebra-laws", "finalg", "unit, associativity, matrix-unit products", 5, algebra_laws},
        {"star-coherence", "finalg", "(ab)* = b*a*, a** = a", 5, star_coherence},
        {"tensor-multiplicative", "finalg", "(a(x)b)(a'(x)b') = aa'(x)bb'", 3, tensor_multiplicative},
        {"hs-adjoint-compose", "channel", "(F∘G)* = G*∘F*", 4, hs_adjoint_compose},
        {"cp-closure", "channel", "CP is closed under composition and tensor", 3, cp_closure},
        {"multiplicative-domain", "channel",
         "F(B*B) = F(B)*F(B) implies F(B*C) = F(B)*F(C) and F(C*B) = F(C)*F(B)", 5, multiplicative_domain},
        {"invertible-deterministic", "channel",
         "invertible unitary conjugations are deterministic; transpose is invertible but not", 4,
         invertible_deterministic},
        {"s-positivity", "channel", "G∘F deterministic implies F(G(C)B) = F(G(C))F(B)", 6, s_positivity_suite},
        {"support-minimality", "state-ae", "a projection carrying omega dominates the support", 5, support_minimality},
        {"nullspace-equivalence", "state-ae", "A P = 0 iff omega(A*A) = 0", 5, nullspace_equivalence},
        {"weak-ae-multiplication", "state-ae",
         "F(B*B)P = F(B)*F(B)P on samples iff F is right a.e. deterministic", 5, weak_ae_multiplication},
        {"ae-left-right-symmetry", "state-ae", "left and right verdicts agree for *-preserving maps", 4,
         ae_left_right_symmetry},
        {"bayes-state-preservation", "bayes", "xi∘G = omega for the candidate of a unital F", 4,
         bayes_state_preservation},
        {"bayes-left-uniqueness", "bayes", "left Bayes maps are left xi-a.e. equal", 4, bayes_left_uniqueness},
        {"bayes-compositional", "bayes", "Bayes maps compose; *-preserving ones invert symmetrically", 4,
         bayes_compositional},
        {"bayes-ae-det-disintegration", "bayes",
         "inverses and Bayes maps of a.e. deterministic maps are disintegrations", 4, bayes_ae_det_disintegration},
        {"relative-conditional-expectation", "bayes", "xi(B*B) = xi(G(F(B)*F(B))) = xi(G(F(B*B)))", 6,
         relative_conditional_expectation},
        {"relative-multiplication", "bayes",
         "xi(G(A*A)) = xi(G(A)*G(A)) implies the mixed identities for every D", 6, relative_multiplication},
        {"modularity-chain", "bayes", "CPU disintegrations are Bayes maps of a.e. deterministic maps", 6,
         modularity_suite},
        {"classical-bayes-exact", "finstoch", "g q = f p and push(g, q) = p exactly", 6, classical_bayes_exact},
        {"embed-functorial", "finstoch", "embed(g∘f) = embed(f)∘embed(g), embedded kernels are CPU", 6,
         embed_functorial},
        {"classical-quantum-bayes", "finstoch", "quantum candidate = embedded Bayes inverse on the support", 6,
         classical_quantum_bayes},
        {"commutative-disintegration", "finstoch", "constructed disintegration verifies and matches the formula", 6,
         commutative_disintegration_suite},
    };
    return all;
}

const Suite &find_suite(const std::string &name) {
    for (const auto &s : suites()) {
        if (s.name == name) {
            return s;
        }
    }
    throw Error(ErrorKind::InvalidInput, "no property suite named '" + name + "'");
}

SuiteResult run_suite(const Suite &suite, int trials, std::uint64_t seed, const Tolerance &tol,
                      std::optional<int> max_dim) {
    const int md = max_dim.value_or(suite.max_dim);
    SuiteResult res;
    res.name = suite.name;
    res.module = suite.module;
    res.trials = trials;
    for (int t = 0; t < trials; ++t) {
        Rng rng = derived_rng(seed, suite.name, static_cast<std::uint64_t>(t));
        const TrialOutcome o = run_trial(suite, rng, md, tol);
        switch (o.kind) {
        case TrialOutcome::Kind::Pass:
            ++res.passed;
            break;
        case TrialOutcome::Kind::Skip:
            ++res.skipped;
            break;
        case TrialOutcome::Kind::Fail:
            ++res.failed;
            if (!res.failing_trial) {
                res.failing_trial = t;
                res.witness = o.note;
            }
            break;
        }
    }
    if (res.failing_trial) {
        // Shrink: look for a failure at the smallest dimension bound.
        for (int d = 1; d < md && !res.minimized_dim; ++d) {
            for (int a = 0; a < 32; ++a) {
                Rng rng = derived_rng(seed, suite.name + "/shrink", static_cast<std::uint64_t>(d * 1000 + a));
                const TrialOutcome o = run_trial(suite, rng, d, tol);
                if (o.kind == TrialOutcome::Kind::Fail) {
                    res.minimized_dim = d;
                    res.minimized_witness = o.note;
                    break;
                }
            }
        }
        if (!res.minimized_dim) {
            res.minimized_dim = md;
            res.minimized_witness = res.witness;
        }
    }
    return res;
}

std::vector<SuiteResult> run_all(int trials, std::uint64_t seed, const Tolerance &tol) {
    std::vector<SuiteResult> out;
    for (const auto &s : suites()) {
        out.push_back(run_suite(s, trials, seed, tol));
    }
    return out;
}

std::string SuiteResult::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["module"] = module;
    j["trials"] = trials;
    j["passed"] = passed;
    j["skipped"] = skipped;
    j["failed"] = failed;
    if (failing_trial) {
        j["failing_trial"] = *failing_trial;
        j["witness"] = witness;
        j["minimized_dim"] = *minimized_dim;
        j["minimized_witness"] = minimized_witness;
    }
    return j.dump();
}

std::string summary_table(const std::vector<SuiteResult> &results) {
    std::ostringstream os;
    os << std::left << std::setw(34) << "suite" << std::setw(15) << "module" << std::right << std::setw(6) << "pass"
       << std::setw(6) << "skip" << std::setw(6) << "fail" << "  verdict\n";
    int bad = 0;
    for (const auto &r : results) {
        os << std::left << std::setw(34) << r.name << std::setw(15) << r.module << std::right << std::setw(6)
           << r.passed << std::setw(6) << r.skipped << std::setw(6) << r.failed << "  " << (r.ok() ? "ok" : "FAIL")
           << "\n";
        if (!r.ok()) {
            ++bad;
            os << "    witness (trial " << *r.failing_trial << "): " << r.witness << "\n";
            os << "    minimized (dim <= " << *r.minimized_dim << "): " << r.minimized_witness << "\n";
        }
    }
    os << results.size() - static_cast<size_t>(bad) << "/" << results.size() << " suites ok\n";
    return os.str();
}

}  // namespace qmarkov
