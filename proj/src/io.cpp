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

#include "qmarkov/io.hpp"

#include <fstream>
#include <sstream>

#include "qmarkov/error.hpp"

namespace qmarkov::io {

namespace {

[[noreturn]] void bad(const std::string &path, const std::string &msg) {
    throw Error(ErrorKind::InvalidInput, path + ": " + msg);
}

std::string kind_of(const Json &j) { return j.type_name(); }

const Json &member(const Json &j, const char *key, const std::string &path) {
    if (!j.is_object()) {
        bad(path, std::string("expected an object, got ") + kind_of(j));
    }
    auto it = j.find(key);
    if (it == j.end()) {
        bad(path, std::string("missing field \"") + key + "\"");
    }
    return *it;
}

const Json &array_of(const Json &j, size_t n, const std::string &path) {
    if (!j.is_array()) {
        bad(path, std::string("expected an array, got ") + kind_of(j));
    }
    if (j.size() != n) {
        bad(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
    }
    return j;
}

int positive_int(const Json &j, const std::string &path) {
    if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 4096) {
        bad(path, "expected a positive integer");
    }
    return j.get<int>();
}

std::string idx(const std::string &path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::pair<int, int> line_col(const std::string &text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

bool exact_scalar(const Json &j) { return j.is_number_integer() || j.is_string(); }

std::pair<int, int> kernel_dims(const Json &j) {
    return {positive_int(member(j, "rows", "$"), "$.rows"), positive_int(member(j, "cols", "$"), "$.cols")};
}

template <typename T, typename Read>
StochasticMatrix<T> read_kernel(const Json &j, Read read) {
    const auto [rows, cols] = kernel_dims(j);
    const Json &e = array_of(member(j, "entries", "$"), static_cast<size_t>(rows), "$.entries");
    std::vector<T> out;
    for (size_t y = 0; y < static_cast<size_t>(rows); ++y) {
        const std::string rp = idx("$.entries", y);
        const Json &row = array_of(e[y], static_cast<size_t>(cols), rp);
        for (size_t x = 0; x < static_cast<size_t>(cols); ++x) {
            out.push_back(read(row[x], idx(rp, x)));
        }
    }
    return StochasticMatrix<T>(rows, cols, std::move(out));
}

template <typename T, typename Read>
ProbVector<T> read_prob(const Json &j, Read read) {
    const Json &p = member(j, "prob", "$");
    if (!p.is_array() || p.empty()) {
        bad("$.prob", "expected a nonempty array");
    }
    std::vector<T> out;
    for (size_t i = 0; i < p.size(); ++i) {
        out.push_back(read(p[i], idx("$.prob", i)));
    }
    return ProbVector<T>(std::move(out));
}

double real_from_json(const Json &j, const std::string &path) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return rational_from_json(j, path).convert_to<double>();
    }
    bad(path, std::string("expected a number, got ") + kind_of(j));
}

}  // namespace

Json parse(const std::string &text, const std::string &source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string what = e.what();
        const auto colon = what.find("error: ");
        throw Error(ErrorKind::InvalidInput, source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                                 ": malformed JSON" +
                                                 (colon == std::string::npos ? "" : ": " + what.substr(colon + 7)));
    }
}

Json read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::InvalidInput, path + ": cannot open file");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str(), path);
}

void write_file(const std::string &path, const Json &j) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::InvalidInput, path + ": cannot write file");
    }
    out << j.dump(2) << "\n";
}

AlgebraShape shape_from_json(const Json &j, const std::string &path) {
    const Json &b = member(j, "blocks", path);
    if (!b.is_array() || b.empty()) {
        bad(path + ".blocks", "expected a nonempty array of block sizes");
    }
    std::vector<int> blocks;
    for (size_t i = 0; i < b.size(); ++i) {
        blocks.push_back(positive_int(b[i], idx(path + ".blocks", i)));
    }
    return AlgebraShape(blocks);
}

Complex complex_from_json(const Json &j, const std::string &path) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        bad(path, "expected [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix matrix_from_json(const Json &j, Eigen::Index rows, Eigen::Index cols, const std::string &path) {
    array_of(j, static_cast<size_t>(rows), path);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string rp = idx(path, static_cast<size_t>(r));
        const Json &row = array_of(j[static_cast<size_t>(r)], static_cast<size_t>(cols), rp);
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(row[static_cast<size_t>(c)], idx(rp, static_cast<size_t>(c)));
        }
    }
    if (!all_finite(m)) {
        bad(path, "non-finite entry");
    }
    return m;
}

AlgElement element_from_json(const Json &j, const AlgebraShape &shape, const std::string &path) {
    const bool wrapped = j.is_object();
    const Json &blocks = wrapped ? member(j, "blocks", path) : j;
    const std::string bp = wrapped ? path + ".blocks" : path;
    array_of(blocks, static_cast<size_t>(shape.num_blocks()), bp);
    std::vector<ComplexMatrix> out;
    for (int b = 0; b < shape.num_blocks(); ++b) {
        out.push_back(matrix_from_json(blocks[static_cast<size_t>(b)], shape.block(b), shape.block(b),
                                       idx(bp, static_cast<size_t>(b))));
    }
    return AlgElement(shape, std::move(out));
}

Channel channel_from_json(const Json &j) {
    const AlgebraShape dom = shape_from_json(member(j, "domain", "$"), "$.domain");
    const AlgebraShape cod = shape_from_json(member(j, "codomain", "$"), "$.codomain");
    const Json &kind = member(j, "kind", "$");
    if (!kind.is_string()) {
        bad("$.kind", "expected \"matrix\" or \"kraus\"");
    }
    if (kind == "matrix") {
        return Channel(dom, cod, matrix_from_json(member(j, "matrix", "$"), cod.coord_dim(), dom.coord_dim(), "$.matrix"));
    }
    if (kind == "kraus") {
        if (dom.num_blocks() != 1 || cod.num_blocks() != 1) {
            bad("$.kind", "Kraus form needs single-block domain and codomain");
        }
        const Json &ks = member(j, "kraus", "$");
        if (!ks.is_array() || ks.empty()) {
            bad("$.kraus", "expected a nonempty array of matrices");
        }
        std::vector<ComplexMatrix> ops;
        for (size_t i = 0; i < ks.size(); ++i) {
            ops.push_back(matrix_from_json(ks[i], dom.block(0), cod.block(0), idx("$.kraus", i)));
        }
        return kraus_channel(dom, cod, ops);
    }
    bad("$.kind", "expected \"matrix\" or \"kraus\", got \"" + kind.get<std::string>() + "\"");
}

State state_from_json(const Json &j, const Tolerance &tol) {
    const AlgebraShape shape = shape_from_json(member(j, "shape", "$"), "$.shape");
    return State(element_from_json(member(j, "density", "$"), shape, "$.density"), tol);
}

Json to_json(const AlgebraShape &s) { return Json{{"blocks", s.blocks()}}; }

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const AlgElement &a) {
    Json blocks = Json::array();
    for (const auto &b : a.blocks()) {
        blocks.push_back(to_json(b));
    }
    return Json{{"blocks", blocks}};
}

Json to_json(const Channel &f) {
    return Json{{"domain", to_json(f.domain())},
                {"codomain", to_json(f.codomain())},
                {"kind", "matrix"},
                {"matrix", to_json(f.matrix())}};
}

Json to_json(const State &s) { return Json{{"shape", to_json(s.shape())}, {"density", to_json(s.density())}}; }

Json to_json(const PropertyReport &r) {
    Json j{{"property", r.property}, {"verdict", std::string(verdict_name(r.verdict))}, {"tolerance", r.tolerance}};
    if (!r.detail.empty()) {
        j["detail"] = r.detail;
    }
    if (r.value) {
        j["value"] = *r.value;
    }
    if (r.witness) {
        Json inputs = Json::array();
        for (const auto &in : r.witness->inputs) {
            inputs.push_back(to_json(in));
        }
        j["witness"] = Json{{"description", r.witness->description}, {"inputs", inputs}};
    }
    if (!r.parts.empty()) {
        Json parts = Json::array();
        for (const auto &p : r.parts) {
            parts.push_back(to_json(p));
        }
        j["parts"] = parts;
    }
    return j;
}

Json to_json(const FixtureReport &r) { return Json::parse(r.to_json()); }

Json to_json(const SuiteResult &r) { return Json::parse(r.to_json()); }

Rational rational_from_json(const Json &j, const std::string &path) {
    if (j.is_number_integer()) {
        return Rational(j.get<long long>());
    }
    if (!j.is_string()) {
        bad(path, "expected an integer or a \"p/q\" string");
    }
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    auto is_int = [](const std::string &t) {
        size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (t.size() <= start || t.size() - start > 30) {
            return false;
        }
        return t.find_first_not_of("0123456789", start) == std::string::npos;
    };
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.find_first_not_of("0+-") == std::string::npos) {
        bad(path, "malformed rational \"" + s + "\"");
    }
    using boost::multiprecision::cpp_int;
    return Rational(cpp_int(num[0] == '+' ? num.substr(1) : num), cpp_int(den[0] == '+' ? den.substr(1) : den));
}

bool is_exact_kernel(const Json &j) {
    const auto it = j.find("entries");
    if (it == j.end() || !it->is_array()) {
        return false;
    }
    for (const auto &row : *it) {
        if (!row.is_array()) {
            return false;
        }
        for (const auto &v : row) {
            if (!exact_scalar(v)) {
                return false;
            }
        }
    }
    return true;
}

bool is_exact_prob(const Json &j) {
    const auto it = j.find("prob");
    if (it == j.end() || !it->is_array()) {
        return false;
    }
    for (const auto &v : *it) {
        if (!exact_scalar(v)) {
            return false;
        }
    }
    return true;
}

StochasticMatrix<Rational> kernel_rational(const Json &j) { return read_kernel<Rational>(j, rational_from_json); }

StochasticMatrix<double> kernel_double(const Json &j) { return read_kernel<double>(j, real_from_json); }

ProbVector<Rational> prob_rational(const Json &j) { return read_prob<Rational>(j, rational_from_json); }

ProbVector<double> prob_double(const Json &j) { return read_prob<double>(j, real_from_json); }

Json to_json(const StochasticMatrix<Rational> &f) {
    Json rows = Json::array();
    for (int y = 0; y < f.rows(); ++y) {
        Json row = Json::array();
        for (int x = 0; x < f.cols(); ++x) {
            row.push_back(f(y, x).str());
        }
        rows.push_back(row);
    }
    return Json{{"rows", f.rows()}, {"cols", f.cols()}, {"entries", rows}};
}

Json to_json(const StochasticMatrix<double> &f) {
    Json rows = Json::array();
    for (int y = 0; y < f.rows(); ++y) {
        Json row = Json::array();
        for (int x = 0; x < f.cols(); ++x) {
            row.push_back(f(y, x));
        }
        rows.push_back(row);
    }
    return Json{{"rows", f.rows()}, {"cols", f.cols()}, {"entries", rows}};
}

Json to_json(const ProbVector<Rational> &p) {
    Json v = Json::array();
    for (const auto &x : p.values()) {
        v.push_back(x.str());
    }
    return Json{{"prob", v}};
}

Json to_json(const ProbVector<double> &p) { return Json{{"prob", p.values()}}; }

}  // namespace qmarkov::io
