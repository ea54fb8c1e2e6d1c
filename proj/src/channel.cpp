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

#include "qmarkov/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "qmarkov/error.hpp"

namespace qmarkov {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::SampledPass: return "sampled-pass";
    }
    return "?";
}

PropertyReport PropertyReport::pass(std::string property, double tolerance, std::string detail) {
    PropertyReport r;
    r.property = std::move(property);
    r.verdict = Verdict::Pass;
    r.tolerance = tolerance;
    r.detail = std::move(detail);
    return r;
}

PropertyReport PropertyReport::fail(std::string property, double tolerance, Witness witness, std::string detail) {
    PropertyReport r;
    r.property = std::move(property);
    r.verdict = Verdict::Fail;
    r.tolerance = tolerance;
    r.witness = std::move(witness);
    r.detail = std::move(detail);
    return r;
}

PropertyReport combine(std::string property, std::vector<PropertyReport> parts) {
    PropertyReport r;
    r.property = std::move(property);
    for (const auto &p : parts) {
        r.tolerance = std::max(r.tolerance, p.tolerance);
        if (p.verdict == Verdict::Fail && r.verdict != Verdict::Fail) {
            r.verdict = Verdict::Fail;
            r.witness = p.witness;
            r.detail = p.property + ": " + p.detail;
        } else if (p.verdict == Verdict::SampledPass && r.verdict == Verdict::Pass) {
            r.verdict = Verdict::SampledPass;
        }
    }
    r.parts = std::move(parts);
    return r;
}

Channel::Channel(AlgebraShape domain, AlgebraShape codomain, ComplexMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.coord_dim() || matrix_.cols() != domain_.coord_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "channel matrix is " + std::to_string(matrix_.rows()) + "x" +
                                                      std::to_string(matrix_.cols()) + ", expected " +
                                                      std::to_string(codomain_.coord_dim()) + "x" +
                                                      std::to_string(domain_.coord_dim()));
    }
    if (!all_finite(matrix_)) {
        throw Error(ErrorKind::InvalidInput, "channel matrix has non-finite entries");
    }
}

Channel Channel::with_flags(const Tolerance &tol) const {
    Channel out = *this;
    ChannelFlags fl;
    fl.unital = is_unital(*this, tol).passed();
    fl.star_preserving = is_star_preserving(*this, tol).passed();
    fl.cp = is_cp(*this, tol).passed();
    fl.deterministic = is_deterministic(*this, tol).passed();
    out.flags_ = fl;
    return out;
}

AlgElement Channel::operator()(const AlgElement &b) const { return apply(*this, b); }

AlgElement apply(const Channel &f, const AlgElement &b) {
    if (b.shape() != f.domain()) {
        throw Error(ErrorKind::ShapeMismatch,
                    "argument shape " + b.shape().to_string() + " vs domain " + f.domain().to_string());
    }
    return unvec(f.codomain(), f.matrix() * vec(b).coords);
}

Channel compose(const Channel &f, const Channel &g) {
    if (f.domain() != g.codomain()) {
        throw Error(ErrorKind::ShapeMismatch,
                    "cannot compose: " + g.codomain().to_string() + " feeds " + f.domain().to_string());
    }
    return Channel(g.domain(), f.codomain(), f.matrix() * g.matrix());
}

Channel tensor(const Channel &f, const Channel &g) {
    const AlgebraShape dom = tensor_shape(f.domain(), g.domain());
    const AlgebraShape cod = tensor_shape(f.codomain(), g.codomain());
    ComplexMatrix m = ComplexMatrix::Zero(cod.coord_dim(), dom.coord_dim());
    const auto fu = matrix_units(f.domain());
    const auto gu = matrix_units(g.domain());
    std::vector<AlgElement> fimg, gimg;
    for (const auto &e : fu) {
        fimg.push_back(apply(f, e));
    }
    for (const auto &e : gu) {
        gimg.push_back(apply(g, e));
    }
    // Domain block (x, y) holds E_ij (x) E_kl at Kronecker index (i*ny + k, j*ny + l).
    const int ny_blocks = g.domain().num_blocks();
    for (int x = 0; x < f.domain().num_blocks(); ++x) {
        const int nx = f.domain().block(x);
        for (int y = 0; y < ny_blocks; ++y) {
            const int ny = g.domain().block(y);
            const int blk = x * ny_blocks + y;
            for (int i = 0; i < nx; ++i) {
                for (int j = 0; j < nx; ++j) {
                    const auto &fa = fimg[static_cast<size_t>(f.domain().coord(x, i, j))];
                    for (int k = 0; k < ny; ++k) {
                        for (int l = 0; l < ny; ++l) {
                            const auto &gb = gimg[static_cast<size_t>(g.domain().coord(y, k, l))];
                            const int col = dom.coord(blk, i * ny + k, j * ny + l);
                            m.col(col) = vec(tensor_elem(fa, gb)).coords;
                        }
                    }
                }
            }
        }
    }
    return Channel(dom, cod, std::move(m));
}

Channel invert(const Channel &f) {
    if (f.matrix().rows() != f.matrix().cols()) {
        throw Error(ErrorKind::Singular, "channel matrix is not square");
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(f.matrix());
    const auto &sv = svd.singularValues();
    if (sv.size() == 0) {
        return Channel(f.codomain(), f.domain(), ComplexMatrix(0, 0));
    }
    const double smin = sv(sv.size() - 1);
    const double cond = smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (!(cond < 1e12)) {
        throw Error(ErrorKind::Singular, "condition number estimate " + std::to_string(cond));
    }
    return Channel(f.codomain(), f.domain(), f.matrix().inverse());
}

Channel hs_adjoint(const Channel &f) { return Channel(f.codomain(), f.domain(), f.matrix().adjoint()); }

Channel add(const Channel &f, const Channel &g, Complex scale_g) {
    if (f.domain() != g.domain() || f.codomain() != g.codomain()) {
        throw Error(ErrorKind::ShapeMismatch, "cannot add channels of different shapes");
    }
    return Channel(f.domain(), f.codomain(), f.matrix() + scale_g * g.matrix());
}

Channel identity_channel(const AlgebraShape &shape) {
    return Channel(shape, shape, ComplexMatrix::Identity(shape.coord_dim(), shape.coord_dim()));
}

Channel transpose_channel(const AlgebraShape &shape) {
    ComplexMatrix m = ComplexMatrix::Zero(shape.coord_dim(), shape.coord_dim());
    for (int b = 0; b < shape.num_blocks(); ++b) {
        for (int i = 0; i < shape.block(b); ++i) {
            for (int j = 0; j < shape.block(b); ++j) {
                m(shape.coord(b, j, i), shape.coord(b, i, j)) = 1.0;
            }
        }
    }
    return Channel(shape, shape, std::move(m));
}

Channel from_function(const AlgebraShape &domain, const AlgebraShape &codomain,
                      const std::function<AlgElement(const AlgElement &)> &fn) {
    ComplexMatrix m(codomain.coord_dim(), domain.coord_dim());
    for (int c = 0; c < domain.coord_dim(); ++c) {
        AlgElement img = fn(AlgElement::matrix_unit(domain, c));
        if (img.shape() != codomain) {
            throw Error(ErrorKind::ShapeMismatch, "function image has shape " + img.shape().to_string());
        }
        m.col(c) = vec(img).coords;
    }
    return Channel(domain, codomain, std::move(m));
}

Channel ad(const ComplexMatrix &v) {
    const AlgebraShape dom = AlgebraShape::matrix(static_cast<int>(v.cols()));
    const AlgebraShape cod = AlgebraShape::matrix(static_cast<int>(v.rows()));
    return from_function(dom, cod, [&](const AlgElement &a) {
        return AlgElement(cod, {v * a.block(0) * v.adjoint()});
    });
}

Channel ad_elem(const AlgElement &w) {
    const AlgebraShape &shape = w.shape();
    return from_function(shape, shape, [&](const AlgElement &a) { return mul(mul(w, a), adjoint(w)); });
}

Channel mult_map(const AlgebraShape &shape) {
    const AlgebraShape dom = tensor_shape(shape, shape);
    ComplexMatrix m = ComplexMatrix::Zero(shape.coord_dim(), dom.coord_dim());
    const int k = shape.num_blocks();
    // Only diagonal block pairs (x, x) survive; E_ij (x) E_kl -> delta_jk E_il.
    for (int x = 0; x < k; ++x) {
        const int n = shape.block(x);
        const int blk = x * k + x;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int l = 0; l < n; ++l) {
                    m(shape.coord(x, i, l), dom.coord(blk, i * n + j, j * n + l)) = 1.0;
                }
            }
        }
    }
    return Channel(dom, shape, std::move(m));
}

Channel functional(const AlgElement &rho) {
    const AlgebraShape &shape = rho.shape();
    const AlgebraShape one = AlgebraShape::matrix(1);
    ComplexMatrix m(1, shape.coord_dim());
    // tr(rho A) = sum_ij rho_ji A_ij
    for (int c = 0; c < shape.coord_dim(); ++c) {
        auto u = shape.unit(c);
        m(0, c) = rho.block(u.block)(u.col, u.row);
    }
    return Channel(shape, one, std::move(m));
}

Channel kraus_channel(const AlgebraShape &domain, const AlgebraShape &codomain,
                      const std::vector<ComplexMatrix> &kraus_ops) {
    if (domain.num_blocks() != 1 || codomain.num_blocks() != 1) {
        throw Error(ErrorKind::DimensionMismatch, "Kraus form needs single-block domain and codomain");
    }
    const int nd = domain.block(0);
    const int nc = codomain.block(0);
    for (const auto &k : kraus_ops) {
        if (k.rows() != nd || k.cols() != nc) {
            throw Error(ErrorKind::DimensionMismatch, "Kraus operator is " + std::to_string(k.rows()) + "x" +
                                                          std::to_string(k.cols()) + ", expected " +
                                                          std::to_string(nd) + "x" + std::to_string(nc));
        }
    }
    return from_function(domain, codomain, [&](const AlgElement &b) {
        ComplexMatrix out = ComplexMatrix::Zero(nc, nc);
        for (const auto &k : kraus_ops) {
            out += k.adjoint() * b.block(0) * k;
        }
        return AlgElement(codomain, {out});
    });
}

std::vector<AlgElement> choi_elements(const Channel &f) {
    std::vector<AlgElement> out;
    const auto &dom = f.domain();
    for (int y = 0; y < dom.num_blocks(); ++y) {
        const int n = dom.block(y);
        const AlgebraShape left = AlgebraShape::matrix(n);
        AlgElement c(tensor_shape(left, f.codomain()));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                AlgElement e = AlgElement::matrix_unit(left, left.coord(0, i, j));
                c += tensor_elem(e, apply(f, AlgElement::matrix_unit(dom, dom.coord(y, i, j))));
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<ComplexMatrix> choi(const Channel &f) {
    std::vector<ComplexMatrix> out;
    for (const auto &c : choi_elements(f)) {
        out.push_back(c.to_dense());
    }
    return out;
}

namespace {

std::vector<double> hermitian_part_spectrum(const AlgElement &c, const Tolerance &tol) {
    std::vector<double> vals;
    for (const auto &m : c.blocks()) {
        ComplexMatrix h = (m + m.adjoint()) / 2.0;
        auto e = herm_eig(h, tol);
        vals.insert(vals.end(), e.values.begin(), e.values.end());
    }
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return vals;
}

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

}  // namespace

std::vector<double> choi_spectrum(const Channel &f, const Tolerance &tol) {
    std::vector<double> out;
    for (const auto &c : choi_elements(f)) {
        auto v = hermitian_part_spectrum(c, tol);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

PropertyReport is_cp(const Channel &f, const Tolerance &tol) {
    const std::string name = "cp";
    double overall_min = std::numeric_limits<double>::infinity();
    std::optional<PropertyReport> failure;
    const auto chois = choi_elements(f);
    for (size_t y = 0; y < chois.size(); ++y) {
        const AlgElement &c = chois[y];
        const bool herm = is_self_adjoint(c, tol.herm);
        auto spec = hermitian_part_spectrum(c, tol);
        const double lo = spec.empty() ? 0.0 : spec.back();
        overall_min = std::min(overall_min, lo);
        if (failure) {
            continue;
        }
        if (!herm) {
            failure = PropertyReport::fail(name, tol.herm, Witness{"Choi matrix of domain block " + std::to_string(y) +
                                                                       " is not Hermitian",
                                                                   {c}},
                                           "map is not *-preserving");
            continue;
        }
        const double scale = std::max(1.0, norm(c));
        if (lo < -tol.psd * scale) {
            failure = PropertyReport::fail(
                name, tol.psd,
                Witness{"Choi matrix of domain block " + std::to_string(y) + " has eigenvalue " + fmt(lo), {c}},
                "negative Choi eigenvalue");
        }
    }
    PropertyReport r = failure ? *failure : PropertyReport::pass(name, tol.psd, "every Choi block is PSD");
    r.value = overall_min;
    return r;
}

PropertyReport is_unital(const Channel &f, const Tolerance &tol) {
    AlgElement one = apply(f, AlgElement::identity(f.domain()));
    AlgElement target = AlgElement::identity(f.codomain());
    if (approx_equal(one, target, tol)) {
        return PropertyReport::pass("unital", tol.eq);
    }
    return PropertyReport::fail("unital", tol.eq, Witness{"F(1) differs from 1", {AlgElement::identity(f.domain()), one}},
                                "max deviation " + fmt(max_abs(one - target)));
}

PropertyReport is_star_preserving(const Channel &f, const Tolerance &tol) {
    const auto &dom = f.domain();
    for (int b = 0; b < dom.num_blocks(); ++b) {
        for (int i = 0; i < dom.block(b); ++i) {
            for (int j = i; j < dom.block(b); ++j) {
                AlgElement eij = AlgElement::matrix_unit(dom, dom.coord(b, i, j));
                AlgElement eji = AlgElement::matrix_unit(dom, dom.coord(b, j, i));
                AlgElement lhs = adjoint(apply(f, eij));
                AlgElement rhs = apply(f, eji);
                if (!approx_equal(lhs, rhs, tol)) {
                    return PropertyReport::fail("star", tol.eq, Witness{"F(E)* != F(E*)", {eij}},
                                                "deviation " + fmt(max_abs(lhs - rhs)));
                }
            }
        }
    }
    return PropertyReport::pass("star", tol.eq);
}

PropertyReport is_deterministic(const Channel &f, const Tolerance &tol) {
    const std::string name = "det";
    std::vector<PropertyReport> parts;
    PropertyReport star = is_star_preserving(f, tol);
    PropertyReport unital = is_unital(f, tol);
    if (!star.passed()) {
        star.property = name;
        return star;
    }
    if (!unital.passed()) {
        unital.property = name;
        return unital;
    }
    const auto &dom = f.domain();
    const auto units = matrix_units(dom);
    std::vector<AlgElement> img;
    for (const auto &e : units) {
        img.push_back(apply(f, e));
    }
    for (size_t a = 0; a < units.size(); ++a) {
        for (size_t b = 0; b < units.size(); ++b) {
            auto ua = dom.unit(static_cast<int>(a));
            auto ub = dom.unit(static_cast<int>(b));
            AlgElement lhs(f.codomain());
            if (ua.block == ub.block && ua.col == ub.row) {
                lhs = img[static_cast<size_t>(dom.coord(ua.block, ua.row, ub.col))];
            }
            AlgElement rhs = mul(img[a], img[b]);
            double scale = std::max({1.0, frob(img[a]) * frob(img[b])});
            if (!approx_zero(lhs - rhs, scale, tol)) {
                return PropertyReport::fail(name, tol.eq, Witness{"F(AB) != F(A)F(B)", {units[a], units[b]}},
                                            "F(AB) = " + to_string(lhs) + ", F(A)F(B) = " + to_string(rhs));
            }
        }
    }
    return PropertyReport::pass(name, tol.eq, "unital *-homomorphism");
}

PropertyReport is_cpu(const Channel &f, const Tolerance &tol) {
    std::vector<PropertyReport> parts;
    parts.push_back(is_star_preserving(f, tol));
    parts.push_back(is_unital(f, tol));
    parts.push_back(is_cp(f, tol));
    return combine("cpu", std::move(parts));
}

namespace {

/// Matrix units first (they expose every counterexample in the corpus),
/// then `trials` random elements with random row rank.
template <typename Check>
PropertyReport sample(const std::string &name, const Channel &f, int trials, std::uint64_t seed, double tolerance,
                      Check check) {
    if (trials < 1) {
        throw Error(ErrorKind::InvalidInput, "trials must be at least 1");
    }
    for (const auto &e : matrix_units(f.domain())) {
        if (auto w = check(e)) {
            return PropertyReport::fail(name, tolerance, Witness{*w, {e}}, "violated at a matrix unit");
        }
    }
    Rng rng(seed);
    const auto &dom = f.domain();
    for (int t = 0; t < trials; ++t) {
        std::vector<ComplexMatrix> blocks;
        for (int n : dom.blocks()) {
            std::uniform_int_distribution<int> pick(1, n);
            int rank = pick(rng);
            ComplexMatrix g = random_gaussian(rng, n, n);
            g.bottomRows(n - rank).setZero();
            blocks.push_back(std::move(g));
        }
        AlgElement b(dom, std::move(blocks));
        if (auto w = check(b)) {
            return PropertyReport::fail(name, tolerance, Witness{*w, {b}},
                                        "violated at random trial " + std::to_string(t));
        }
    }
    PropertyReport r = PropertyReport::pass(name, tolerance,
                                            std::to_string(trials) + " random trials, seed " + std::to_string(seed));
    r.verdict = Verdict::SampledPass;
    return r;
}

std::optional<std::string> psd_violation(const AlgElement &x, const Tolerance &tol, const std::string &what) {
    if (!is_self_adjoint(x, tol.herm)) {
        return what + " is not self-adjoint";
    }
    double lo = min_eigenvalue(x, tol);
    if (lo < -tol.psd * std::max(1.0, norm(x))) {
        return what + " has eigenvalue " + fmt(lo);
    }
    return std::nullopt;
}

}  // namespace

PropertyReport is_positive_sampled(const Channel &f, int trials, std::uint64_t seed, const Tolerance &tol) {
    return sample("pos", f, trials, seed, tol.psd, [&](const AlgElement &b) {
        return psd_violation(apply(f, mul(adjoint(b), b)), tol, "F(B*B)");
    });
}

PropertyReport is_schwarz_sampled(const Channel &f, int trials, std::uint64_t seed, const Tolerance &tol) {
    const double n1 = norm(apply(f, AlgElement::identity(f.domain())));
    return sample("schwarz", f, trials, seed, tol.psd, [&](const AlgElement &b) {
        AlgElement fb = apply(f, b);
        AlgElement gap = apply(f, mul(adjoint(b), b)) - n1 * mul(adjoint(fb), fb);
        return psd_violation(gap, tol, "F(B*B) - |F(1)| F(B)*F(B)");
    });
}

PropertyReport s_positivity(const Channel &f, const Channel &g, const Tolerance &tol) {
    if (f.domain() != g.codomain()) {
        throw Error(ErrorKind::ShapeMismatch, "s_positivity needs g: C -> B and f: B -> A");
    }
    PropertyReport hyp = is_deterministic(compose(f, g), tol);
    hyp.property = "hypothesis: f∘g deterministic";

    const auto cu = matrix_units(g.domain());
    const auto bu = matrix_units(f.domain());
    auto run = [&](bool left) -> PropertyReport {
        const std::string name = left ? "f(g(C)B) = f(g(C))f(B)" : "f(Bg(C)) = f(B)f(g(C))";
        for (const auto &c : cu) {
            AlgElement gc = apply(g, c);
            AlgElement fgc = apply(f, gc);
            for (const auto &b : bu) {
                AlgElement fb = apply(f, b);
                AlgElement lhs = left ? apply(f, mul(gc, b)) : apply(f, mul(b, gc));
                AlgElement rhs = left ? mul(fgc, fb) : mul(fb, fgc);
                if (!approx_zero(lhs - rhs, std::max(frob(lhs), frob(rhs)), tol)) {
                    return PropertyReport::fail(name, tol.eq, Witness{"(C, B)", {c, b}},
                                                "lhs " + to_string(lhs) + ", rhs " + to_string(rhs));
                }
            }
        }
        return PropertyReport::pass(name, tol.eq);
    };
    PropertyReport left = run(true);
    PropertyReport right = run(false);
    PropertyReport r;
    r.property = "s-positivity";
    r.tolerance = tol.eq;
    if (hyp.passed() && !left.passed()) {
        r.verdict = Verdict::Fail;
        r.witness = left.witness;
        r.detail = "hypothesis holds but " + left.property + " fails";
    } else {
        r.detail = hyp.passed() ? "conclusion holds" : "hypothesis fails, nothing to check";
    }
    r.parts = {hyp, left, right};
    return r;
}

PropertyReport causality(const Channel &f, const Channel &g, const Channel &h, const Channel &k,
                         const Tolerance &tol) {
    if (h.domain() != k.domain() || h.codomain() != k.codomain() || g.domain() != h.codomain() ||
        f.domain() != g.codomain()) {
        throw Error(ErrorKind::ShapeMismatch, "causality needs h, k: D -> C, g: C -> B, f: B -> A");
    }
    const auto au = matrix_units(h.codomain());
    const auto bu = matrix_units(h.domain());
    const auto cu = matrix_units(g.codomain());

    PropertyReport hyp = PropertyReport::pass("hypothesis: f(g(A h(B))) = f(g(A k(B)))", tol.eq);
    PropertyReport con = PropertyReport::pass("conclusion: f(C g(A h(B))) = f(C g(A k(B)))", tol.eq);
    for (const auto &b : bu) {
        AlgElement hb = apply(h, b);
        AlgElement kb = apply(k, b);
        for (const auto &a : au) {
            AlgElement gh = apply(g, mul(a, hb));
            AlgElement gk = apply(g, mul(a, kb));
            if (hyp.passed()) {
                AlgElement d = apply(f, gh) - apply(f, gk);
                if (!approx_zero(d, 1.0, tol)) {
                    hyp = PropertyReport::fail(hyp.property, tol.eq, Witness{"(A, B)", {a, b}},
                                               "difference " + to_string(d));
                }
            }
            if (con.passed()) {
                for (const auto &c : cu) {
                    AlgElement d = apply(f, mul(c, gh)) - apply(f, mul(c, gk));
                    if (!approx_zero(d, 1.0, tol)) {
                        con = PropertyReport::fail(con.property, tol.eq, Witness{"(A, B, C)", {a, b, c}},
                                                   "difference " + to_string(d));
                        break;
                    }
                }
            }
        }
    }
    PropertyReport r;
    r.property = "causality";
    r.tolerance = tol.eq;
    if (hyp.passed() && !con.passed()) {
        r.verdict = Verdict::Fail;
        r.witness = con.witness;
        r.detail = "hypothesis holds but conclusion fails";
    } else {
        r.detail = hyp.passed() ? "conclusion holds" : "hypothesis fails, nothing to check";
    }
    r.parts = {hyp, con};
    return r;
}

std::string describe(const PropertyReport &r) {
    std::string s = std::string(verdict_name(r.verdict));
    if (!r.detail.empty()) {
        s += ": " + r.detail;
    }
    if (r.witness) {
        s += " [witness: " + r.witness->description;
        for (const auto &in : r.witness->inputs) {
            if (in.shape().coord_dim() <= 16) {
                s += " " + to_string(in);
            }
        }
        s += "]";
    }
    return s;
}

}  // namespace qmarkov
