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

// qmarkov: command-line front end for channel checks, Bayesian inversion,
// disintegrations, the fixture corpus and the randomized property suites.
//
// Exit codes: 0 every check passed, 1 a check failed (or a construction is
// impossible for the given input), 2 usage or input error.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmarkov/bayes.hpp"
#include "qmarkov/corpus.hpp"
#include "qmarkov/error.hpp"
#include "qmarkov/io.hpp"
#include "qmarkov/props.hpp"

using namespace qmarkov;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Config {
    double tol = 0;
    double rank_tol = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int trials = kDefaultTrials;
    std::string format = "text";
    std::string out;

    std::string channel, state, candidate, props;
    std::string kernel, prob;
    std::vector<std::string> names;
    std::vector<std::string> suites;
    bool all = false;

    Tolerance tolerance() const {
        Tolerance t;
        if (tol > 0) {
            t.eq = tol;
            t.psd = tol;
        }
        if (rank_tol > 0) {
            t.rank = rank_tol;
        }
        return t;
    }
    bool json() const { return format == "json"; }
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidState:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::UnknownFixture:
    case ErrorKind::NotHermitian:
    case ErrorKind::NotSelfAdjoint:
        return kUsage;
    default:
        return kFail;
    }
}

/// Collects reports and prints them in the requested format.
class Output {
  public:
    explicit Output(const Config &cfg) : cfg_(cfg) {}

    /// Informational reports are printed but do not affect the exit code.
    void report(const std::string &label, const PropertyReport &r, bool informational = false) {
        ok_ = ok_ && (informational || r.passed());
        if (cfg_.json()) {
            Json j = io::to_json(r);
            j["label"] = label;
            j["informational"] = informational;
            reports_.push_back(j);
        } else {
            std::cout << std::left << std::setw(28) << label << describe(r) << "\n";
        }
    }

    void note(const std::string &key, const std::string &text) {
        if (cfg_.json()) {
            if (!extra_.contains(key)) {
                extra_[key] = Json::array();
            }
            extra_[key].push_back(text);
        } else {
            std::cout << key << ": " << text << "\n";
        }
    }

    void attach(const std::string &key, Json j) { extra_[key] = std::move(j); }
    void fail() { ok_ = false; }
    bool ok() const { return ok_; }

    int finish() {
        if (cfg_.json()) {
            Json j;
            j["ok"] = ok_;
            j["reports"] = reports_;
            for (auto &[k, v] : extra_.items()) {
                j[k] = v;
            }
            std::cout << j.dump(2) << "\n";
        }
        return ok_ ? kOk : kFail;
    }

  private:
    const Config &cfg_;
    bool ok_ = true;
    Json reports_ = Json::array();
    Json extra_ = Json::object();
};

std::string need(const std::string &value, const char *flag) {
    if (value.empty()) {
        throw UsageError(std::string("missing required option ") + flag);
    }
    return value;
}

std::vector<std::string> split(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

void write_output(const Config &cfg, const Json &j, Output &out) {
    if (cfg.json()) {
        out.attach("map", j);
    }
    if (!cfg.out.empty()) {
        io::write_file(cfg.out, j);
        out.note("written", cfg.out);
    } else if (!cfg.json()) {
        std::cout << "map: " << j.dump() << "\n";
    }
}

// ---------------------------------------------------------------------------

int cmd_check(const Config &cfg) {
    const Tolerance tol = cfg.tolerance();
    const Channel f = io::channel_from_json(io::read_file(need(cfg.channel, "--channel")));
    std::optional<State> omega;
    if (!cfg.state.empty()) {
        omega = io::state_from_json(io::read_file(cfg.state), tol);
    }
    std::vector<std::string> props = split(cfg.props);
    if (props.empty()) {
        props = {"cp", "unital", "star", "det", "pos", "schwarz"};
        if (omega) {
            props.push_back("ae-det");
            props.push_back("ae-unital");
        }
    }
    Output out(cfg);
    for (const auto &p : props) {
        if (p == "cp") {
            out.report(p, is_cp(f, tol));
        } else if (p == "unital") {
            out.report(p, is_unital(f, tol));
        } else if (p == "star") {
            out.report(p, is_star_preserving(f, tol));
        } else if (p == "det") {
            out.report(p, is_deterministic(f, tol));
        } else if (p == "pos") {
            out.report(p, is_positive_sampled(f, cfg.trials, cfg.seed, tol));
        } else if (p == "schwarz") {
            out.report(p, is_schwarz_sampled(f, cfg.trials, cfg.seed, tol));
        } else if (p == "ae-det" || p == "ae-unital") {
            if (!omega) {
                throw UsageError(p + " needs --state");
            }
            for (Side side : {Side::Right, Side::Left}) {
                const std::string label = p + " (" + std::string(side_name(side)) + ")";
                out.report(label, p == "ae-det" ? ae_deterministic(f, *omega, side, tol)
                                                : ae_unital(f, *omega, side, tol));
            }
        } else {
            throw UsageError("unknown property '" + p + "' (cp, unital, star, det, pos, schwarz, ae-det, ae-unital)");
        }
    }
    return out.finish();
}

int cmd_bayes(const Config &cfg) {
    const Tolerance tol = cfg.tolerance();
    const Channel f = io::channel_from_json(io::read_file(need(cfg.channel, "--channel")));
    const State omega = io::state_from_json(io::read_file(need(cfg.state, "--state")), tol);
    const BayesProblem prob = BayesProblem::make(f, omega, tol);
    Output out(cfg);
    if (!cfg.candidate.empty()) {
        const Channel g = io::channel_from_json(io::read_file(cfg.candidate));
        out.report("bayes (left)", verify_bayes(f, omega, prob.xi, g, Side::Left, tol));
        out.report("bayes (right)", verify_bayes(f, omega, prob.xi, g, Side::Right, tol), true);
        out.report("cpu", is_cpu(g, tol));
        return out.finish();
    }
    const BayesResult res = bayes_candidate(prob, tol);
    out.report("bayes (left)", res.bayes_left);
    out.report("bayes (right)", res.bayes_right, true);
    out.report("cpu", res.cpu);
    for (const auto &n : res.notes) {
        out.note("note", n);
    }
    write_output(cfg, io::to_json(res.g), out);
    return out.finish();
}

int cmd_petz(const Config &cfg) {
    const Tolerance tol = cfg.tolerance();
    const Channel f = io::channel_from_json(io::read_file(need(cfg.channel, "--channel")));
    const State omega = io::state_from_json(io::read_file(need(cfg.state, "--state")), tol);
    const BayesProblem prob = BayesProblem::make(f, omega, tol);
    Output out(cfg);
    const PropertyReport exists = petz_exists(prob, tol);
    out.report("petz condition", exists);
    if (!exists.passed()) {
        return out.finish();
    }
    const Channel g = petz_recovery(prob, tol);
    out.report("bayes (left)", verify_bayes(f, omega, prob.xi, g, Side::Left, tol));
    out.report("cpu", is_cpu(g, tol));
    write_output(cfg, io::to_json(g), out);
    return out.finish();
}

int cmd_disint_verify(const Config &cfg) {
    const Tolerance tol = cfg.tolerance();
    const Channel f = io::channel_from_json(io::read_file(need(cfg.channel, "--channel")));
    const State omega = io::state_from_json(io::read_file(need(cfg.state, "--state")), tol);
    const Channel g = io::channel_from_json(io::read_file(need(cfg.candidate, "--candidate")));
    Output out(cfg);
    const PropertyReport d = verify_disintegration(f, omega, g, tol);
    out.report("disintegration", d);
    const PropertyReport fc = is_cpu(f, tol), gc = is_cpu(g, tol);
    if (d.passed() && fc.passed() && gc.passed()) {
        const ModularityReport chain = modularity_chain(f, omega, g, tol);
        out.report("bayes (left)", chain.bayes);
        out.report("ae-det (right)", chain.ae_det);
    } else if (d.passed()) {
        out.note("modularity chain", "skipped: F or G is not CPU");
    }
    return out.finish();
}

int cmd_disint_construct(const Config &cfg) {
    const Tolerance tol = cfg.tolerance();
    const Channel f = io::channel_from_json(io::read_file(need(cfg.channel, "--channel")));
    const State omega = io::state_from_json(io::read_file(need(cfg.state, "--state")), tol);
    const Channel g = commutative_disintegration(f, omega, tol);
    Output out(cfg);
    out.report("disintegration", verify_disintegration(f, omega, g, tol));
    write_output(cfg, io::to_json(g), out);
    return out.finish();
}

template <typename T>
void check_inputs(const StochasticMatrix<T> &f, const std::optional<ProbVector<T>> &p, double tol,
                  bool need_stochastic = true) {
    if (need_stochastic && !f.is_stochastic(tol)) {
        throw Error(ErrorKind::InvalidInput, "kernel columns must be probability vectors");
    }
    if (p && (p->size() != f.cols() || !p->is_probability(tol))) {
        throw Error(ErrorKind::InvalidInput, "prob must be a probability vector of length cols");
    }
}

template <typename T>
int classical_run(const Config &cfg, const std::string &mode, const StochasticMatrix<T> &f,
                  const std::optional<ProbVector<T>> &p, const std::optional<StochasticMatrix<T>> &cand) {
    const Tolerance tol = cfg.tolerance();
    const double eps = std::is_floating_point_v<T> ? tol.eq : 0.0;
    Output out(cfg);
    if (mode == "check") {
        out.report("stochastic", f.is_stochastic(eps) ? PropertyReport::pass("stochastic", eps)
                                                      : PropertyReport::fail("stochastic", eps, {"column sums", {}}));
        out.report("deterministic", f.is_deterministic(eps)
                                        ? PropertyReport::pass("deterministic", eps)
                                        : PropertyReport::fail("deterministic", eps, {"non-indicator column", {}}));
        if (p) {
            check_inputs(f, p, std::max(eps, 1e-12), false);
            out.report("ae-det", is_ae_deterministic(f, *p, tol));
            if (cand) {
                out.report("bayes diagram", verify_bayes_diagram(f, *p, *cand, tol));
                out.report("disintegration", verify_disintegration(f, *p, *cand, tol));
            }
        }
        return out.finish();
    }
    check_inputs(f, p, std::max(eps, 1e-12));
    if (!p) {
        throw UsageError("--prob is required");
    }
    const StochasticMatrix<T> g = mode == "bayes" ? bayes_inverse(f, *p) : disintegration(f, *p, tol);
    out.report("bayes diagram", verify_bayes_diagram(f, *p, g, tol));
    if (mode == "disint") {
        out.report("disintegration", verify_disintegration(f, *p, g, tol));
    }
    out.note("arithmetic", std::is_floating_point_v<T> ? "floating point" : "exact rational");
    write_output(cfg, io::to_json(g), out);
    return out.finish();
}

int cmd_classical(const Config &cfg, const std::string &mode) {
    const Json fj = io::read_file(need(cfg.kernel, "--kernel"));
    std::optional<Json> pj, gj;
    if (!cfg.prob.empty()) {
        pj = io::read_file(cfg.prob);
    }
    if (!cfg.candidate.empty()) {
        gj = io::read_file(cfg.candidate);
    }
    const bool exact = io::is_exact_kernel(fj) && (!pj || io::is_exact_prob(*pj)) && (!gj || io::is_exact_kernel(*gj));
    if (exact) {
        std::optional<ProbVector<Rational>> p;
        std::optional<StochasticMatrix<Rational>> g;
        if (pj) {
            p = io::prob_rational(*pj);
        }
        if (gj) {
            g = io::kernel_rational(*gj);
        }
        return classical_run(cfg, mode, io::kernel_rational(fj), p, g);
    }
    std::optional<ProbVector<double>> p;
    std::optional<StochasticMatrix<double>> g;
    if (pj) {
        p = io::prob_double(*pj);
    }
    if (gj) {
        g = io::kernel_double(*gj);
    }
    return classical_run(cfg, mode, io::kernel_double(fj), p, g);
}

int cmd_corpus_list(const Config &cfg) {
    if (cfg.json()) {
        Json arr = Json::array();
        for (const auto &fx : registry()) {
            arr.push_back(Json{{"name", fx.name}, {"location", fx.location}});
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto &fx : registry()) {
            std::cout << std::left << std::setw(22) << fx.name << fx.location << "\n";
        }
    }
    return kOk;
}

int cmd_corpus_run(const Config &cfg) {
    std::vector<const Fixture *> chosen;
    if (cfg.all) {
        for (const auto &fx : registry()) {
            chosen.push_back(&fx);
        }
    }
    for (const auto &n : cfg.names) {
        chosen.push_back(&find_fixture(n));
    }
    if (chosen.empty()) {
        throw UsageError("corpus run needs fixture names or --all");
    }
    RunOptions opt{cfg.tolerance(), cfg.seed, cfg.trials};
    Json arr = Json::array();
    int passed = 0;
    for (const Fixture *fx : chosen) {
        const FixtureReport r = fx->run(opt);
        passed += r.passed();
        arr.push_back(io::to_json(r));
        if (!cfg.json()) {
            std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.location << ")\n";
            for (const auto &c : r.checks) {
                if (!c.pass) {
                    std::cout << "    failed: " << c.desc << (c.detail.empty() ? "" : " -- " + c.detail) << "\n";
                }
            }
        }
    }
    const Json doc{{"ok", passed == static_cast<int>(chosen.size())}, {"fixtures", arr}};
    if (cfg.json()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << passed << "/" << chosen.size() << " fixtures pass\n";
    }
    if (!cfg.out.empty()) {
        io::write_file(cfg.out, doc);
    }
    return passed == static_cast<int>(chosen.size()) ? kOk : kFail;
}

int cmd_props(const Config &cfg) {
    std::vector<SuiteResult> results;
    if (cfg.suites.empty()) {
        results = run_all(cfg.trials, cfg.seed, cfg.tolerance());
    } else {
        for (const auto &n : cfg.suites) {
            results.push_back(run_suite(find_suite(n), cfg.trials, cfg.seed, cfg.tolerance()));
        }
    }
    bool ok = true;
    Json arr = Json::array();
    for (const auto &r : results) {
        ok = ok && r.ok();
        arr.push_back(io::to_json(r));
    }
    const Json doc{{"ok", ok}, {"seed", cfg.seed}, {"trials", cfg.trials}, {"suites", arr}};
    if (cfg.json()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "seed " << cfg.seed << ", " << cfg.trials << " trials\n" << summary_table(results);
    }
    if (!cfg.out.empty()) {
        io::write_file(cfg.out, doc);
    }
    return ok ? kOk : kFail;
}

}  // namespace

int main(int argc, char **argv) {
    Config cfg;
    CLI::App app{"Finite-dimensional C*-algebra channels: positivity, a.e. relations, Bayesian inversion"};
    app.require_subcommand(1);

    auto common = [&](CLI::App *sub) {
        sub->add_option("--tol", cfg.tol, "equality and PSD tolerance (relative)")->check(CLI::PositiveNumber);
        sub->add_option("--rank-tol", cfg.rank_tol, "support cutoff relative to the largest eigenvalue")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "RNG seed (default: $QMARKOV_SEED or 0)")
            ->each([&](const std::string &) { cfg.seed_given = true; });
        sub->add_option("--trials", cfg.trials, "random trials for sampled checks")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", cfg.out, "write the constructed map or report here");
    };
    auto problem = [&](CLI::App *sub) {
        sub->add_option("--channel", cfg.channel, "channel JSON");
        sub->add_option("--state", cfg.state, "state JSON");
        sub->add_option("--candidate", cfg.candidate, "candidate map JSON");
    };

    auto *check = app.add_subcommand("check", "run channel property checks");
    check->add_option("channel_file", cfg.channel, "channel JSON");
    problem(check);
    check->add_option("--props", cfg.props, "comma list: cp,unital,star,det,pos,schwarz,ae-det,ae-unital");
    common(check);

    auto *bayes = app.add_subcommand("bayes", "construct or verify a Bayes map");
    problem(bayes);
    common(bayes);

    auto *petz = app.add_subcommand("petz", "Petz recovery map (faithful pullback only)");
    problem(petz);
    common(petz);

    auto *disint = app.add_subcommand("disint", "disintegrations");
    disint->require_subcommand(1);
    auto *dverify = disint->add_subcommand("verify", "verify (F, omega, G) and run the modularity chain");
    auto *dconstruct = disint->add_subcommand("construct", "construct G for a commutative codomain");
    for (auto *s : {dverify, dconstruct}) {
        problem(s);
        common(s);
    }

    auto *classical = app.add_subcommand("classical", "stochastic matrices, exact when inputs are rational");
    classical->require_subcommand(1);
    std::string classical_mode;
    for (const char *mode : {"bayes", "disint", "check"}) {
        auto *s = classical->add_subcommand(mode, std::string("classical ") + mode);
        s->add_option("--kernel,--channel", cfg.kernel, "kernel JSON {rows, cols, entries}");
        s->add_option("--prob,--state", cfg.prob, "probability JSON {prob}");
        s->add_option("--candidate", cfg.candidate, "candidate kernel JSON");
        common(s);
        s->callback([&classical_mode, mode] { classical_mode = mode; });
    }

    auto *corpus = app.add_subcommand("corpus", "named fixtures");
    corpus->require_subcommand(1);
    auto *clist = corpus->add_subcommand("list", "list fixtures");
    common(clist);
    auto *crun = corpus->add_subcommand("run", "run fixtures");
    crun->add_option("names", cfg.names, "fixture names");
    crun->add_flag("--all", cfg.all, "run every fixture");
    common(crun);

    auto *props = app.add_subcommand("props", "randomized property suites");
    props->add_option("--suite", cfg.suites, "restrict to the named suites");
    common(props);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    if (!cfg.seed_given) {
        if (const char *env = std::getenv("QMARKOV_SEED")) {
            try {
                size_t used = 0;
                cfg.seed = std::stoull(env, &used);
                if (used != std::string(env).size()) {
                    throw std::invalid_argument("trailing characters");
                }
            } catch (const std::exception &) {
                std::cerr << "error: QMARKOV_SEED must be an unsigned integer\n";
                return kUsage;
            }
        }
    }

    try {
        if (*check) {
            return cmd_check(cfg);
        }
        if (*bayes) {
            return cmd_bayes(cfg);
        }
        if (*petz) {
            return cmd_petz(cfg);
        }
        if (*dverify) {
            return cmd_disint_verify(cfg);
        }
        if (*dconstruct) {
            return cmd_disint_construct(cfg);
        }
        if (*classical) {
            return cmd_classical(cfg, classical_mode);
        }
        if (*clist) {
            return cmd_corpus_list(cfg);
        }
        if (*crun) {
            return cmd_corpus_run(cfg);
        }
        if (*props) {
            return cmd_props(cfg);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
