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

#include "qmarkov/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qmarkov/bayes.hpp"
#include "qmarkov/error.hpp"

namespace qmarkov {

namespace {

using Word = Hamming74::Word;

std::string num(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

Check expect(std::string desc, bool ok, std::string detail = {}) { return Check{std::move(desc), ok, std::move(detail)}; }

/// The check passes when the report's verdict is the expected one. A
/// failing verdict must also carry a witness.
Check expect_report(std::string desc, const PropertyReport &r, bool expect_pass) {
    bool ok = r.passed() == expect_pass;
    if (!r.passed() && !r.witness) {
        ok = false;
    }
    return Check{std::move(desc), ok, describe(r)};
}

const PropertyReport &part(const PropertyReport &r, size_t i) { return r.parts.at(i); }

AlgElement m2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return AlgElement::from_matrix(m);
}

ComplexMatrix unit_matrix(int n, int i, int j) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

int rank_gf2(std::vector<std::vector<int>> rows) {
    int rank = 0;
    const size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
        size_t pivot = static_cast<size_t>(rank);
        while (pivot < rows.size() && rows[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[pivot], rows[static_cast<size_t>(rank)]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r != static_cast<size_t>(rank) && rows[r][c]) {
                for (size_t k = 0; k < ncols; ++k) {
                    rows[r][k] ^= rows[static_cast<size_t>(rank)][k];
                }
            }
        }
        ++rank;
    }
    return rank;
}

const std::map<std::string, std::string> &locations() {
    static const std::map<std::string, std::string> table = {
        {"transpose-spos", "positive unital maps are not S-positive (transpose)"},
        {"mu-norm", "norm of the multiplication map grows with n"},
        {"no-broadcast", "noncommutative multiplication is not positive (no broadcasting)"},
        {"left-right-ae", "left and right a.e. equality differ for non-*-preserving maps"},
        {"doubling-ae", "a.e. equality is not preserved by doubling"},
        {"pad-ae-det", "a.e. deterministic map not a.e. equal to a *-homomorphism"},
        {"not-det-reasonable", "unital *-preserving maps are not deterministically reasonable"},
        {"transpose-bayes", "transpose disintegration that is not a Bayesian inverse"},
        {"strict-pos", "CPU maps are not strictly positive"},
        {"pu-not-causal", "positive unital maps are not causal"},
        {"epr", "conditional of the singlet state is positive but not CP"},
        {"hamming74", "classical error correction: Hamming (7,4) code as a disintegration"},
        {"knill-laflamme", "quantum error correction: three-qubit phase-flip code as a disintegration"},
    };
    return table;
}

FixtureReport make_report(const std::string &name) {
    FixtureReport r;
    r.name = name;
    r.location = locations().at(name);
    return r;
}

}  // namespace

bool FixtureReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

std::string FixtureReport::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["location"] = location;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto &c : checks) {
        j["checks"].push_back({{"desc", c.desc}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Hamming (7,4)

Hamming74 make_hamming74() {
    Hamming74 hc;
    hc.q = {{{1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            hc.h[i][j] = i == j ? 1 : 0;
        }
        for (int j = 0; j < 4; ++j) {
            hc.h[i][3 + j] = hc.q[i][j];
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 4; ++j) {
            hc.m[i][j] = hc.q[i][j];
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            hc.m[3 + i][j] = i == j ? 1 : 0;
        }
    }
    return hc;
}

Word Hamming74::bits(int value, int width) {
    Word w(static_cast<size_t>(width));
    for (int i = 0; i < width; ++i) {
        w[static_cast<size_t>(i)] = (value >> (width - 1 - i)) & 1;
    }
    return w;
}

int Hamming74::value(const Word &w) {
    int v = 0;
    for (int b : w) {
        v = (v << 1) | b;
    }
    return v;
}

int Hamming74::distance(const Word &a, const Word &b) {
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i];
    }
    return d;
}

Word Hamming74::encode(const Word &x) const {
    Word y(7, 0);
    for (int i = 0; i < 7; ++i) {
        int s = 0;
        for (int j = 0; j < 4; ++j) {
            s += m[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        }
        y[static_cast<size_t>(i)] = s % 2;
    }
    return y;
}

Word Hamming74::syndrome(const Word &y) const {
    Word s(3, 0);
    for (int i = 0; i < 3; ++i) {
        int t = 0;
        for (int j = 0; j < 7; ++j) {
            t += h[static_cast<size_t>(i)][static_cast<size_t>(j)] * y[static_cast<size_t>(j)];
        }
        s[static_cast<size_t>(i)] = t % 2;
    }
    return s;
}

Word Hamming74::recover(const Word &y) const {
    Word s = syndrome(y);
    Word fixed = y;
    if (value(s) != 0) {
        // The syndrome of a single flip at position i is column i of H.
        for (int i = 0; i < 7; ++i) {
            bool match = true;
            for (int r = 0; r < 3; ++r) {
                match = match && h[static_cast<size_t>(r)][static_cast<size_t>(i)] == s[static_cast<size_t>(r)];
            }
            if (match) {
                fixed[static_cast<size_t>(i)] ^= 1;
                break;
            }
        }
    }
    return Word(fixed.begin() + 3, fixed.end());
}

StochasticMatrix<Rational> Hamming74::error_kernel() const {
    std::vector<Rational> e(128 * 16, Rational(0));
    for (int x = 0; x < 16; ++x) {
        Word code = encode(bits(x, 4));
        for (int y = 0; y < 128; ++y) {
            int d = distance(bits(y, 7), code);
            Rational v = d == 0 ? Rational(13, 20) : d == 1 ? Rational(1, 20) : Rational(0);
            e[static_cast<size_t>(y * 16 + x)] = v;
        }
    }
    return StochasticMatrix<Rational>(128, 16, std::move(e));
}

StochasticMatrix<Rational> Hamming74::recovery_kernel() const {
    std::vector<int> fn;
    for (int y = 0; y < 128; ++y) {
        fn.push_back(value(recover(bits(y, 7))));
    }
    return StochasticMatrix<Rational>::from_function(16, fn);
}

Fixture hamming74() {
    Fixture fx;
    fx.name = "hamming74";
    fx.location = locations().at(fx.name);
    fx.run = [](const RunOptions &opt) {
        FixtureReport rep = make_report("hamming74");
        const Hamming74 hc = make_hamming74();

        bool hm_zero = true;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 4; ++j) {
                int s = 0;
                for (int k = 0; k < 7; ++k) {
                    s += hc.h[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                         hc.m[static_cast<size_t>(k)][static_cast<size_t>(j)];
                }
                hm_zero = hm_zero && s % 2 == 0;
            }
        }
        rep.checks.push_back(expect("H M = 0 mod 2", hm_zero));

        std::vector<std::vector<int>> hrows, mrows;
        for (const auto &r : hc.h) {
            hrows.emplace_back(r.begin(), r.end());
        }
        for (int j = 0; j < 4; ++j) {
            std::vector<int> col;
            for (int i = 0; i < 7; ++i) {
                col.push_back(hc.m[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            }
            mrows.push_back(col);
        }
        const int rh = rank_gf2(hrows);
        const int rm = rank_gf2(mrows);
        rep.checks.push_back(expect("exact sequence: rank M = 4, rank H = 3, 4 + 3 = 7", rh == 3 && rm == 4,
                                    "rank H = " + std::to_string(rh) + ", rank M = " + std::to_string(rm)));

        int clean = 0, corrected = 0;
        for (int x = 0; x < 16; ++x) {
            Word w = Hamming74::bits(x, 4);
            Word code = hc.encode(w);
            clean += hc.recover(code) == w;
            for (int i = 0; i < 7; ++i) {
                Word bad = code;
                bad[static_cast<size_t>(i)] ^= 1;
                corrected += hc.recover(bad) == w;
            }
        }
        rep.checks.push_back(expect("recover(M x) = x for all 16 messages", clean == 16, std::to_string(clean) + "/16"));
        rep.checks.push_back(expect("recover(M x + e_i) = x for all 112 single errors", corrected == 112,
                                    std::to_string(corrected) + "/112"));

        const auto f = hc.error_kernel();
        const auto g = hc.recovery_kernel();
        bool local = true;
        for (int x = 0; x < 16; ++x) {
            Word code = hc.encode(Hamming74::bits(x, 4));
            for (int y = 0; y < 128; ++y) {
                if (Hamming74::distance(Hamming74::bits(y, 7), code) > 1) {
                    local = local && f(y, x) == 0;
                }
            }
        }
        rep.checks.push_back(expect("error kernel is stochastic and vanishes beyond distance 1",
                                    f.is_stochastic(0) && local));
        rep.checks.push_back(expect("recovery∘error = id on 16 points (exact)",
                                    compose(g, f) == StochasticMatrix<Rational>::identity(16)));

        std::vector<Rational> pv;
        for (int x = 0; x < 16; ++x) {
            pv.emplace_back(x + 1, 136);
        }
        const ProbVector<Rational> p(pv);
        const ProbVector<Rational> q = push(f, p);
        rep.checks.push_back(expect_report("classical disintegration: error disintegrates (recovery, q, p), exact",
                                           verify_disintegration(g, q, f, opt.tol), true));
        rep.checks.push_back(expect_report("Bayes diagram g q = f p holds exactly",
                                           verify_bayes_diagram(f, p, bayes_inverse(f, p), opt.tol), true));

        const Channel fe = embed(g);
        const Channel ge = embed(f);
        const State omega = embed_prob(q, opt.tol);
        rep.checks.push_back(
            expect_report("embedded disintegration verifies", verify_disintegration(fe, omega, ge, opt.tol), true));
        ModularityReport chain = modularity_chain(fe, omega, ge, opt.tol);
        rep.checks.push_back(expect_report("embedded error map is a Bayesian inverse", chain.bayes, true));
        rep.checks.push_back(expect_report("embedded recovery is a.e. deterministic", chain.ae_det, true));
        return rep;
    };
    return fx;
}

// ---------------------------------------------------------------------------
// Knill-Laflamme

KnillLaflamme make_knill_laflamme(double gamma) {
    if (!(gamma >= 0)) {
        throw Error(ErrorKind::InvalidInput, "gamma must be nonnegative");
    }
    struct {
        ComplexMatrix v;
        std::vector<ComplexMatrix> errors, recovery;
    } kl;
    const double e1 = std::exp(-gamma);
    const double ap = std::sqrt((1 + e1) / 2);
    const double am = std::sqrt((1 - e1) / 2);
    const double big_gamma = 0.25 * (2 - std::exp(-3 * gamma) + 3 * e1);

    ComplexMatrix plus(2, 1), minus(2, 1);
    plus << 1, 1;
    minus << 1, -1;
    plus /= std::sqrt(2.0);
    minus /= std::sqrt(2.0);
    kl.v = ComplexMatrix(8, 2);
    kl.v.col(0) = kron(kron(plus, plus), plus);
    kl.v.col(1) = kron(kron(minus, minus), minus);

    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    ComplexMatrix sz(2, 2);
    sz << 1, 0, 0, -1;
    const ComplexMatrix lp = ap * id2;
    const ComplexMatrix lm = am * sz;
    const double norm = 1.0 / std::sqrt(big_gamma);
    kl.errors = {norm * kron(kron(lp, lp), lp), norm * kron(kron(lm, lp), lp), norm * kron(kron(lp, lm), lp),
                 norm * kron(kron(lp, lp), lm)};

    const ComplexMatrix pc = kl.v * kl.v.adjoint();
    const std::vector<ComplexMatrix> z = {ComplexMatrix::Identity(8, 8), kron(kron(sz, id2), id2),
                                          kron(kron(id2, sz), id2), kron(kron(id2, id2), sz)};
    for (const auto &zi : z) {
        kl.recovery.push_back(pc * zi);
    }

    const AlgebraShape m8 = AlgebraShape::matrix(8);
    const AlgebraShape m2 = AlgebraShape::matrix(2);
    // F = Ad_{V*}∘E and G = R∘Ad_V as Kraus maps.
    std::vector<ComplexMatrix> fk, gk;
    for (const auto &e : kl.errors) {
        fk.push_back(e * kl.v);
    }
    for (const auto &r : kl.recovery) {
        gk.push_back(kl.v.adjoint() * r);
    }
    return KnillLaflamme{gamma,
                         kl.v,
                         kl.errors,
                         kl.recovery,
                         kraus_channel(m8, m8, kl.errors),
                         kraus_channel(m8, m8, kl.recovery),
                         kraus_channel(m8, m2, fk),
                         kraus_channel(m2, m8, gk)};
}

namespace {

void run_knill_laflamme(double gamma, const RunOptions &opt, FixtureReport &rep, const std::string &prefix) {
    const KnillLaflamme kl = make_knill_laflamme(gamma);
    ComplexMatrix rsum = ComplexMatrix::Zero(8, 8), esum = ComplexMatrix::Zero(8, 8);
    for (const auto &r : kl.recovery) {
        rsum += r.adjoint() * r;
    }
    for (const auto &e : kl.errors) {
        esum += e.adjoint() * e;
    }
    const ComplexMatrix id8 = ComplexMatrix::Identity(8, 8);
    const double rdev = max_abs(rsum - id8);
    const double edev = max_abs(esum - id8);
    rep.checks.push_back(expect(prefix + "sum R_i* R_i = 1 (1e-10)", rdev <= 1e-10, "deviation " + num(rdev)));
    rep.checks.push_back(expect(prefix + "sum E_i* E_i = 1 (1e-10)", edev <= 1e-10, "deviation " + num(edev)));
    rep.checks.push_back(expect_report(prefix + "R is unital", is_unital(kl.r, opt.tol), true));
    rep.checks.push_back(expect_report(prefix + "G is a *-homomorphism", is_deterministic(kl.g, opt.tol), true));
    rep.checks.push_back(expect_report(prefix + "F is CPU", is_cpu(kl.f, opt.tol), true));
    const double fg = max_abs(compose(kl.f, kl.g).matrix() - ComplexMatrix::Identity(4, 4));
    rep.checks.push_back(expect(prefix + "F∘G = id (1e-9)", fg <= 1e-9, "deviation " + num(fg)));

    int ok = 0;
    std::string first_failure;
    std::optional<State> first_omega;
    for (int k = 0; k < 8; ++k) {
        Rng rng(opt.seed * 1000003ULL + static_cast<std::uint64_t>(k));
        State omega2(random_density(rng, AlgebraShape::matrix(2), true), opt.tol);
        State omega = pullback_state(omega2, kl.f, opt.tol);
        PropertyReport r = verify_disintegration(kl.g, omega, kl.f, opt.tol);
        if (r.passed()) {
            ++ok;
        } else if (first_failure.empty()) {
            first_failure = describe(r);
        }
        if (!first_omega) {
            first_omega = omega;
        }
    }
    rep.checks.push_back(expect(prefix + "F disintegrates (G, omega∘F, omega) for 8 sampled states", ok == 8,
                                std::to_string(ok) + "/8" + (first_failure.empty() ? "" : "; " + first_failure)));
    ModularityReport chain = modularity_chain(kl.g, *first_omega, kl.f, opt.tol);
    rep.checks.push_back(expect_report(prefix + "F is a Bayesian inverse of G", chain.bayes, true));
    rep.checks.push_back(expect_report(prefix + "G is a.e. deterministic", chain.ae_det, true));
}

}  // namespace

Fixture knill_laflamme(double gamma) {
    Fixture fx;
    fx.name = "knill-laflamme";
    fx.location = locations().at(fx.name);
    fx.run = [gamma](const RunOptions &opt) {
        FixtureReport rep = make_report("knill-laflamme");
        run_knill_laflamme(gamma, opt, rep, "");
        return rep;
    };
    return fx;
}

// ---------------------------------------------------------------------------
// Counterexamples

namespace {

FixtureReport transpose_spos(const RunOptions &opt) {
    FixtureReport rep = make_report("transpose-spos");
    for (int n : {2, 3}) {
        const std::string pre = "n=" + std::to_string(n) + ": ";
        const Channel t = transpose_channel(AlgebraShape::matrix(n));
        rep.checks.push_back(expect_report(pre + "T is unital", is_unital(t, opt.tol), true));
        rep.checks.push_back(
            expect_report(pre + "T is positive (sampled)", is_positive_sampled(t, opt.trials, opt.seed, opt.tol), true));
        rep.checks.push_back(expect_report(pre + "T is not Schwarz-positive",
                                           is_schwarz_sampled(t, opt.trials, opt.seed, opt.tol), false));
        PropertyReport sp = s_positivity(t, t, opt.tol);
        rep.checks.push_back(expect_report(pre + "T∘T is deterministic", part(sp, 0), true));
        rep.checks.push_back(expect_report(pre + "S-positivity equation T(T(C)B) = T(T(C))T(B) fails", sp, false));
        if (sp.witness && sp.witness->inputs.size() == 2) {
            const auto &c = sp.witness->inputs[0];
            const auto &b = sp.witness->inputs[1];
            AlgElement lhs = apply(t, mul(apply(t, c), b));
            AlgElement rhs = mul(apply(t, apply(t, c)), apply(t, b));
            rep.checks.push_back(expect(pre + "witness reproduces the violation", !approx_equal(lhs, rhs, opt.tol),
                                        "lhs " + to_string(lhs) + ", rhs " + to_string(rhs)));
        }
    }
    // A^T B vs B^T A at A = B = E12.
    const Channel t = transpose_channel(AlgebraShape::matrix(2));
    AlgElement e12 = m2(0, 1, 0, 0);
    AlgElement lhs = apply(t, mul(apply(t, e12), e12));
    AlgElement rhs = mul(apply(t, apply(t, e12)), apply(t, e12));
    rep.checks.push_back(expect("pair (E12, E12): T(T(E12)E12) = E22 but T(T(E12))T(E12) = E11",
                                approx_equal(lhs, m2(0, 0, 0, 1)) && approx_equal(rhs, m2(1, 0, 0, 0)),
                                "lhs " + to_string(lhs) + ", rhs " + to_string(rhs)));
    return rep;
}

FixtureReport mu_norm(const RunOptions &opt) {
    FixtureReport rep = make_report("mu-norm");
    for (int n = 2; n <= 8; ++n) {
        const AlgebraShape mn = AlgebraShape::matrix(n);
        ComplexMatrix a = ComplexMatrix::Zero(n * n, n * n);
        for (int i = 0; i < n; ++i) {
            a += kron(unit_matrix(n, 0, i), unit_matrix(n, i, 0));
        }
        AlgElement an = AlgElement::from_matrix(a);
        AlgElement mu_a = apply(mult_map(mn), an);
        AlgElement expected = AlgElement::matrix_unit(mn, 0);
        expected *= static_cast<double>(n);
        const double na = op_norm(a);
        const double nm = norm(mu_a);
        const std::string pre = "n=" + std::to_string(n) + ": ";
        rep.checks.push_back(expect(pre + "|A^(n)| = 1 (1e-10)", std::abs(na - 1) <= 1e-10, num(na)));
        rep.checks.push_back(expect(pre + "mu(A^(n)) = n E11", approx_equal(mu_a, expected, opt.tol)));
        rep.checks.push_back(expect(pre + "|mu(A^(n))| = n (1e-9)", std::abs(nm - n) <= 1e-9, num(nm)));
    }
    return rep;
}

FixtureReport no_broadcast(const RunOptions &opt) {
    FixtureReport rep = make_report("no-broadcast");
    const Channel mu = mult_map(AlgebraShape::matrix(2));
    rep.checks.push_back(expect_report("mu on M2 is unital", is_unital(mu, opt.tol), true));
    PropertyReport cp = is_cp(mu, opt.tol);
    rep.checks.push_back(expect_report("mu on M2 is not CP", cp, false));
    rep.checks.push_back(expect("Choi minimum eigenvalue < -0.1", cp.value && *cp.value < -0.1,
                                cp.value ? num(*cp.value) : "missing"));
    PropertyReport pos = is_positive_sampled(mu, opt.trials, opt.seed, opt.tol);
    rep.checks.push_back(expect_report("mu on M2 is not positive (sampled)", pos, false));
    if (pos.witness && !pos.witness->inputs.empty()) {
        const auto &b = pos.witness->inputs[0];
        AlgElement img = apply(mu, mul(adjoint(b), b));
        bool bad = !is_self_adjoint(img, opt.tol.herm) || min_eigenvalue(img, opt.tol) < -opt.tol.psd * norm(img);
        rep.checks.push_back(expect("witness: mu(B*B) is not positive", bad, to_string(img)));
    }
    for (int k = 1; k <= 4; ++k) {
        const Channel muc = mult_map(AlgebraShape::commutative(k));
        rep.checks.push_back(expect_report("mu on C^" + std::to_string(k) + " is CP", is_cp(muc, opt.tol), true));
    }
    return rep;
}

FixtureReport left_right_ae(const RunOptions &opt) {
    FixtureReport rep = make_report("left-right-ae");
    const AlgebraShape s = AlgebraShape::matrix(2);
    const Channel f = identity_channel(s);
    const Channel fp = from_function(s, s, [](const AlgElement &b) {
        AlgElement out = b;
        out.block(0)(1, 0) = 0;
        return out;
    });
    const State omega(m2(1, 0, 0, 0), opt.tol);
    rep.checks.push_back(expect_report("F' is unital", is_unital(fp, opt.tol), true));
    rep.checks.push_back(expect_report("F' is not *-preserving", is_star_preserving(fp, opt.tol), false));
    bool same_pullback = approx_equal(pullback_state(omega, f, opt.tol).density(),
                                      pullback_state(omega, fp, opt.tol).density(), opt.tol);
    rep.checks.push_back(expect("omega∘F = omega∘F'", same_pullback));
    rep.checks.push_back(expect_report("F ≍ F' (left: P(F - F')(B) = 0)", ae_equal(f, fp, omega, Side::Left, opt.tol),
                                       true));
    rep.checks.push_back(expect_report("F, F' not right a.e. equal ((F - F')(B)P != 0)",
                                       ae_equal(f, fp, omega, Side::Right, opt.tol), false));
    return rep;
}

FixtureReport doubling_ae(const RunOptions &opt) {
    FixtureReport rep = make_report("doubling-ae");
    const double lam = 0.5;
    const AlgebraShape s = AlgebraShape::matrix(2);
    auto make_f = [lam](const AlgElement &x) {
        const auto &b = x.block(0);
        return m2(b(0, 0), lam * b(0, 1), lam * b(1, 0), (1 - lam) * b(0, 0) + lam * b(1, 1));
    };
    auto make_g = [lam](const AlgElement &x) {
        const auto &b = x.block(0);
        return m2(b(0, 0), lam * b(0, 1), lam * b(1, 0), b(1, 1));
    };
    const Channel f = from_function(s, s, make_f);
    const Channel g = from_function(s, s, make_g);
    const State omega(m2(1, 0, 0, 0), opt.tol);
    rep.checks.push_back(expect_report("F is CPU", is_cpu(f, opt.tol), true));
    rep.checks.push_back(expect_report("G is CPU", is_cpu(g, opt.tol), true));
    rep.checks.push_back(expect_report("F ≍ G (right)", ae_equal(f, g, omega, Side::Right, opt.tol), true));
    rep.checks.push_back(expect_report("F ≍ G (left)", ae_equal(f, g, omega, Side::Left, opt.tol), true));

    const Channel mu = mult_map(s);
    const Channel df = compose(mu, tensor(f, f));
    const Channel dg = compose(mu, tensor(g, g));
    rep.checks.push_back(expect_report("doubled maps B1⊗B2 -> F(B1)F(B2) and G(B1)G(B2) are not a.e. equal",
                                       ae_equal(df, dg, omega, Side::Right, opt.tol), false));

    const AlgElement p = omega.support();
    auto diff_at = [&](Complex a, Complex b, Complex c, Complex d) {
        AlgElement x = m2(a, b, c, d);
        return mul(apply(df, tensor_elem(x, x)) - apply(dg, tensor_elem(x, x)), p);
    };
    AlgElement d0 = diff_at(1, 0, 1, 0);
    rep.checks.push_back(expect("F(B)^2 P - G(B)^2 P at a=c=1, b=d=0 is 1/4 in entry (2,1) only",
                                approx_equal(d0, m2(0, 0, 0.25, 0), opt.tol), to_string(d0)));
    Rng rng(opt.seed);
    bool formula = true;
    for (int t = 0; t < 8; ++t) {
        ComplexMatrix r = random_gaussian(rng, 2, 2);
        AlgElement dd = diff_at(r(0, 0), r(0, 1), r(1, 0), r(1, 1));
        Complex expected = lam * (1 - lam) * r(1, 0) * (r(0, 0) - r(1, 1));
        formula = formula && approx_equal(dd, m2(0, 0, expected, 0), opt.tol);
    }
    rep.checks.push_back(expect("difference equals lambda(1-lambda) c (a-d) in entry (2,1) on random B", formula));
    rep.checks.push_back(expect_report("F∘F ≍ G∘G (right)",
                                       ae_equal(compose(f, f), compose(g, g), omega, Side::Right, opt.tol), true));
    return rep;
}

FixtureReport pad_ae_det(const RunOptions &opt) {
    FixtureReport rep = make_report("pad-ae-det");
    const int n = 2, m = 3;
    const AlgebraShape sn = AlgebraShape::matrix(n);
    const AlgebraShape sm = AlgebraShape::matrix(m);
    const Channel f = from_function(sn, sm, [&](const AlgElement &a) {
        ComplexMatrix out = ComplexMatrix::Zero(m, m);
        out.topLeftCorner(n, n) = a.block(0);
        out.bottomRightCorner(m - n, m - n) =
            (a.block(0).trace() / static_cast<double>(n)) * ComplexMatrix::Identity(m - n, m - n);
        return AlgElement(sm, {out});
    });
    ComplexMatrix rho = ComplexMatrix::Zero(m, m);
    rho.topLeftCorner(n, n) << 0.6, 0.2, 0.2, 0.4;
    const State omega(AlgElement(sm, {rho}), opt.tol);
    rep.checks.push_back(expect_report("F is CPU", is_cpu(f, opt.tol), true));
    rep.checks.push_back(expect_report("F is right a.e. deterministic", ae_deterministic(f, omega, Side::Right, opt.tol),
                                       true));
    rep.checks.push_back(expect_report("F is left a.e. deterministic", ae_deterministic(f, omega, Side::Left, opt.tol),
                                       true));
    rep.checks.push_back(expect_report("F is not deterministic", is_deterministic(f, opt.tol), false));
    rep.checks.push_back(expect("no *-homomorphism M2 -> M3: 3 mod 2 != 0", m % n != 0));
    return rep;
}

FixtureReport not_det_reasonable(const RunOptions &opt) {
    FixtureReport rep = make_report("not-det-reasonable");
    const AlgebraShape s2 = AlgebraShape::matrix(2);
    const AlgebraShape s4 = AlgebraShape::matrix(4);
    const Channel f = from_function(s2, s4, [&](const AlgElement &x) {
        const auto &b = x.block(0);
        ComplexMatrix o(4, 4);
        o << b(0, 0), b(0, 1), 0, 0, b(1, 0), b(1, 1), b(1, 0), b(1, 0), 0, b(0, 1), b(0, 0), b(0, 1), 0, b(0, 1),
            b(1, 0), b(1, 1);
        return AlgElement(s4, {o});
    });
    const Channel g = from_function(s2, s4, [&](const AlgElement &x) {
        ComplexMatrix o = ComplexMatrix::Zero(4, 4);
        o.topLeftCorner(2, 2) = x.block(0);
        o.bottomRightCorner(2, 2) = x.block(0);
        return AlgElement(s4, {o});
    });
    const State omega(AlgElement::matrix_unit(s4, 0), opt.tol);
    rep.checks.push_back(expect_report("G is deterministic", is_deterministic(g, opt.tol), true));
    rep.checks.push_back(expect_report("F is unital", is_unital(f, opt.tol), true));
    rep.checks.push_back(expect_report("F is *-preserving", is_star_preserving(f, opt.tol), true));
    rep.checks.push_back(expect_report("F ≍ G (right)", ae_equal(f, g, omega, Side::Right, opt.tol), true));
    rep.checks.push_back(expect_report("F ≍ G (left)", ae_equal(f, g, omega, Side::Left, opt.tol), true));
    rep.checks.push_back(expect_report("F is not right a.e. deterministic",
                                       ae_deterministic(f, omega, Side::Right, opt.tol), false));
    return rep;
}

FixtureReport transpose_bayes(const RunOptions &opt) {
    FixtureReport rep = make_report("transpose-bayes");
    const AlgebraShape s = AlgebraShape::matrix(2);
    const Channel t = transpose_channel(s);
    const State omega(m2(0.7, 0, 0, 0.3), opt.tol);
    const State xi = pullback_state(omega, t, opt.tol);
    rep.checks.push_back(expect("xi has density rho^T", approx_equal(xi.density(), m2(0.7, 0, 0, 0.3), opt.tol)));
    rep.checks.push_back(expect_report("T is a disintegration of (T, omega, xi)",
                                       verify_disintegration(t, omega, t, opt.tol), true));
    PropertyReport left = verify_bayes(t, omega, xi, t, Side::Left, opt.tol);
    rep.checks.push_back(expect_report("Bayes condition fails (left)", left, false));
    bool e12_pair = left.witness && left.witness->inputs.size() == 2 &&
                    approx_equal(left.witness->inputs[0], m2(0, 1, 0, 0)) &&
                    approx_equal(left.witness->inputs[1], m2(0, 1, 0, 0));
    rep.checks.push_back(expect("first failing pair is (E12, E12)", e12_pair));
    rep.checks.push_back(
        expect_report("Bayes condition fails (right)", verify_bayes(t, omega, xi, t, Side::Right, opt.tol), false));
    bool precondition = false;
    std::string why;
    try {
        modularity_chain(t, omega, t, opt.tol);
    } catch (const Error &e) {
        precondition = e.kind() == ErrorKind::PreconditionsUnmet;
        why = e.what();
    }
    rep.checks.push_back(expect("modularity chain refuses: T is not CP", precondition, why));
    const BayesProblem prob = BayesProblem::make(t, omega, opt.tol);
    rep.checks.push_back(expect_report("no CPU Bayesian inverse (Petz criterion fails)", petz_exists(prob, opt.tol),
                                       false));
    BayesResult cand = bayes_candidate(prob, opt.tol);
    rep.checks.push_back(expect_report("candidate Bayes map satisfies the left condition", cand.bayes_left, true));
    rep.checks.push_back(expect_report("candidate Bayes map is not CPU", cand.cpu, false));
    return rep;
}

FixtureReport strict_pos(const RunOptions &opt) {
    FixtureReport rep = make_report("strict-pos");
    const AlgebraShape s2 = AlgebraShape::matrix(2);
    const AlgebraShape s3 = AlgebraShape::matrix(3);
    const AlgebraShape s4 = AlgebraShape::matrix(4);
    const Channel f = from_function(s2, s4, [&](const AlgElement &x) {
        ComplexMatrix o = ComplexMatrix::Zero(4, 4);
        o.topLeftCorner(2, 2) = x.block(0);
        o.bottomRightCorner(2, 2) = x.block(0);
        return AlgElement(s4, {o});
    });
    const Channel g = from_function(s4, s3, [&](const AlgElement &x) {
        return AlgElement(s3, {x.block(0).topLeftCorner(3, 3)});
    });
    ComplexMatrix sigma = ComplexMatrix::Zero(3, 3);
    sigma(0, 0) = 0.5;
    sigma(1, 1) = 0.5;
    const State xi(AlgElement(s3, {sigma}), opt.tol);
    rep.checks.push_back(expect_report("F is a *-homomorphism", is_deterministic(f, opt.tol), true));
    rep.checks.push_back(expect_report("G is CPU", is_cpu(g, opt.tol), true));
    PropertyReport sp = strict_positivity(f, g, xi, opt.tol);
    rep.checks.push_back(expect_report("G∘F is xi-a.e. deterministic", part(sp, 0), true));
    rep.checks.push_back(expect_report("G∘F is xi-a.e. deterministic (right)",
                                       ae_deterministic(compose(g, f), xi, Side::Right, opt.tol), true));
    rep.checks.push_back(expect_report("P G(A F(B)) = P G(A) G(F(B)) fails", part(sp, 1), false));
    rep.checks.push_back(expect_report("mirrored P G(F(B) A) = P G(F(B)) G(A) holds", part(sp, 2), true));
    rep.checks.push_back(expect_report("strict positivity fails", sp, false));
    return rep;
}

FixtureReport pu_not_causal(const RunOptions &opt) {
    FixtureReport rep = make_report("pu-not-causal");
    const Complex i(0, 1);
    ComplexMatrix pm(2, 2);
    pm << 0.5, -0.5 * i, 0.5 * i, 0.5;
    const AlgebraShape s2 = AlgebraShape::matrix(2);
    const AlgebraShape s3 = AlgebraShape::matrix(3);
    const AlgElement p = AlgElement::from_matrix(pm);
    const AlgElement pperp = AlgElement::identity(s2) - p;
    const double lam = 0.25;
    const Channel f = functional(p);
    const Channel g = transpose_channel(s2);
    const Channel h = from_function(s3, s2, [&](const AlgElement &x) {
        const auto &b = x.block(0);
        return b(0, 0) * pperp + (0.5 * (b(1, 1) + b(2, 2))) * p;
    });
    const Channel k = from_function(s3, s2, [&](const AlgElement &x) {
        const auto &b = x.block(0);
        return b(0, 0) * pperp + (lam * b(1, 1) + (1 - lam) * b(2, 2)) * p;
    });
    rep.checks.push_back(expect("P is a rank-one projection", is_projection(p, opt.tol) && std::abs(trace(p) - 1.0) < 1e-12));
    rep.checks.push_back(expect_report("F = tr(P ·) is CPU", is_cpu(f, opt.tol), true));
    rep.checks.push_back(expect_report("H is CPU", is_cpu(h, opt.tol), true));
    rep.checks.push_back(expect_report("K is CPU", is_cpu(k, opt.tol), true));
    rep.checks.push_back(expect_report("G = T is not CP", is_cp(g, opt.tol), false));
    PropertyReport c = causality(f, g, h, k, opt.tol);
    rep.checks.push_back(expect_report("F(G(A H(B))) = F(G(A K(B))) holds", part(c, 0), true));
    rep.checks.push_back(expect_report("F(C G(A H(B))) = F(C G(A K(B))) fails", part(c, 1), false));
    rep.checks.push_back(expect_report("causality fails", c, false));
    return rep;
}

FixtureReport epr(const RunOptions &opt) {
    FixtureReport rep = make_report("epr");
    const EprSolution sol = solve_epr_conditional(opt.tol);
    rep.checks.push_back(expect("joint-state equation residual <= 1e-10", sol.residual <= 1e-10, num(sol.residual)));
    rep.checks.push_back(expect("solution is unique", sol.nullity == 0, "nullity " + std::to_string(sol.nullity)));
    const AlgebraShape s2 = AlgebraShape::matrix(2);
    const Channel expected = from_function(s2, s2, [](const AlgElement &x) {
        const auto &b = x.block(0);
        return m2(b(1, 1), -b(0, 1), -b(1, 0), b(0, 0));
    });
    const double dev = max_abs(sol.f.matrix() - expected.matrix());
    rep.checks.push_back(expect("F(B) = [[b22, -b12], [-b21, b11]]", dev <= 1e-9, "deviation " + num(dev)));
    const auto spec = choi_spectrum(sol.f, opt.tol);
    int plus = 0, minus = 0;
    bool on_pm1 = true;
    for (double v : spec) {
        if (std::abs(v - 1) <= 1e-9) {
            ++plus;
        } else if (std::abs(v + 1) <= 1e-9) {
            ++minus;
        } else {
            on_pm1 = false;
        }
    }
    rep.checks.push_back(expect("Choi eigenvalues are {-1, +1} (1e-9)", on_pm1 && plus > 0 && minus > 0,
                                "+1 x" + std::to_string(plus) + ", -1 x" + std::to_string(minus)));
    rep.checks.push_back(expect_report("F is unital", is_unital(sol.f, opt.tol), true));
    rep.checks.push_back(expect_report("F is positive (sampled, 256 trials)",
                                       is_positive_sampled(sol.f, std::max(256, opt.trials), opt.seed, opt.tol), true));
    rep.checks.push_back(expect_report("F is not CP", is_cp(sol.f, opt.tol), false));
    return rep;
}

using Runner = FixtureReport (*)(const RunOptions &);

const std::vector<std::pair<std::string, Runner>> &counterexample_table() {
    static const std::vector<std::pair<std::string, Runner>> table = {
        {"transpose-spos", transpose_spos}, {"mu-norm", mu_norm},
        {"no-broadcast", no_broadcast},     {"left-right-ae", left_right_ae},
        {"doubling-ae", doubling_ae},       {"pad-ae-det", pad_ae_det},
        {"not-det-reasonable", not_det_reasonable}, {"transpose-bayes", transpose_bayes},
        {"strict-pos", strict_pos},         {"pu-not-causal", pu_not_causal},
        {"epr", epr},
    };
    return table;
}

}  // namespace

EprSolution solve_epr_conditional(const Tolerance &tol) {
    (void)tol;
    const AlgebraShape s2 = AlgebraShape::matrix(2);
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.5;
    rho(1, 2) = -0.5;
    rho(2, 1) = -0.5;
    const AlgElement joint = AlgElement::from_matrix(rho);

    // Unknown x[r * 4 + c] = F.matrix(r, c). For A = E_ij:
    // omega_A(E_ij F(B)) = F(B)_ji / 2.
    ComplexMatrix sys = ComplexMatrix::Zero(16, 16);
    ComplexVector rhs(16);
    for (int a = 0; a < 4; ++a) {
        auto ua = s2.unit(a);
        for (int b = 0; b < 4; ++b) {
            const int row = a * 4 + b;
            sys(row, s2.coord(0, ua.col, ua.row) * 4 + b) = 0.5;
            AlgElement ab = tensor_elem(AlgElement::matrix_unit(s2, a), AlgElement::matrix_unit(s2, b));
            rhs(row) = trace(mul(joint, ab));
        }
    }
    ComplexVector x = solve_least_squares(sys, rhs);
    ComplexMatrix m(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m(r, c) = x(r * 4 + c);
        }
    }
    EprSolution sol{Channel(s2, s2, m), (sys * x - rhs).cwiseAbs().maxCoeff(),
                    static_cast<int>(null_space(sys).cols())};
    return sol;
}

const std::vector<std::string> &counterexample_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &e : counterexample_table()) {
            out.push_back(e.first);
        }
        return out;
    }();
    return names;
}

Fixture counterexample(const std::string &name) {
    for (const auto &e : counterexample_table()) {
        if (e.first == name) {
            Fixture fx;
            fx.name = name;
            fx.location = locations().at(name);
            fx.run = e.second;
            return fx;
        }
    }
    throw Error(ErrorKind::UnknownFixture, "no fixture named '" + name + "'");
}

const std::vector<Fixture> &registry() {
    static const std::vector<Fixture> fixtures = [] {
        std::vector<Fixture> out;
        out.push_back(hamming74());
        Fixture kl;
        kl.name = "knill-laflamme";
        kl.location = locations().at(kl.name);
        kl.run = [](const RunOptions &opt) {
            FixtureReport rep = make_report("knill-laflamme");
            for (double gamma : {0.0, 0.25, 0.5, 1.0}) {
                run_knill_laflamme(gamma, opt, rep, "gamma=" + num(gamma) + ": ");
            }
            return rep;
        };
        out.push_back(kl);
        for (const auto &name : counterexample_names()) {
            out.push_back(counterexample(name));
        }
        return out;
    }();
    return fixtures;
}

const Fixture &find_fixture(const std::string &name) {
    for (const auto &fx : registry()) {
        if (fx.name == name) {
            return fx;
        }
    }
    throw Error(ErrorKind::UnknownFixture, "no fixture named '" + name + "'");
}

}  // namespace qmarkov
