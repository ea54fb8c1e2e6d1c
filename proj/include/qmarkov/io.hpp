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

#include <json.hpp>

#include "qmarkov/bayes.hpp"
#include "qmarkov/channel.hpp"
#include "qmarkov/corpus.hpp"
#include "qmarkov/finstoch.hpp"
#include "qmarkov/props.hpp"
#include "qmarkov/state.hpp"

namespace qmarkov::io {

using Json = nlohmann::ordered_json;

// Every reader throws Error(InvalidInput) naming the JSON path of the
// offending value ("$.matrix[2][1]") or, for syntax errors, the line and
// column.

Json parse(const std::string &text, const std::string &source = "<input>");
Json read_file(const std::string &path);
void write_file(const std::string &path, const Json &j);

AlgebraShape shape_from_json(const Json &j, const std::string &path = "$");
/// Either [re, im] or a bare real number.
Complex complex_from_json(const Json &j, const std::string &path);
ComplexMatrix matrix_from_json(const Json &j, Eigen::Index rows, Eigen::Index cols, const std::string &path);
/// {"blocks": [...]} or the bare array of blocks, checked against the shape.
AlgElement element_from_json(const Json &j, const AlgebraShape &shape, const std::string &path = "$");
/// {"domain", "codomain", "kind": "matrix" | "kraus", "matrix" | "kraus"}.
Channel channel_from_json(const Json &j);
/// {"shape", "density"}. Throws InvalidState for a non-density.
State state_from_json(const Json &j, const Tolerance &tol = {});

Json to_json(const AlgebraShape &s);
Json to_json(Complex z);
Json to_json(const ComplexMatrix &m);
Json to_json(const AlgElement &a);
Json to_json(const Channel &f);
Json to_json(const State &s);
Json to_json(const PropertyReport &r);
Json to_json(const FixtureReport &r);
Json to_json(const SuiteResult &r);

/// Integers and "p/q" strings.
Rational rational_from_json(const Json &j, const std::string &path);
/// True when every entry is an integer or a "p/q" string.
bool is_exact_kernel(const Json &j);
bool is_exact_prob(const Json &j);
/// {"rows", "cols", "entries": [[...], ...]}.
StochasticMatrix<Rational> kernel_rational(const Json &j);
StochasticMatrix<double> kernel_double(const Json &j);
/// {"prob": [...]}.
ProbVector<Rational> prob_rational(const Json &j);
ProbVector<double> prob_double(const Json &j);

Json to_json(const StochasticMatrix<Rational> &f);
Json to_json(const StochasticMatrix<double> &f);
Json to_json(const ProbVector<Rational> &p);
Json to_json(const ProbVector<double> &p);

}  // namespace qmarkov::io
