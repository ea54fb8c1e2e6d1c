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

#include <gtest/gtest.h>

#include "qmarkov/error.hpp"
#include "qmarkov/io.hpp"

using namespace qmarkov;
using io::Json;

namespace {

std::string message_of(const std::function<void()> &fn, ErrorKind expected = ErrorKind::InvalidInput) {
    try {
        fn();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), expected) << e.what();
        return e.what();
    }
    ADD_FAILURE() << "no throw";
    return {};
}

}  // namespace

TEST(Io, ChannelRoundTrip) {
    Rng rng(1);
    AlgebraShape a({1, 2}), b({2});
    Channel f(a, b, random_gaussian(rng, b.coord_dim(), a.coord_dim()));
    Channel back = io::channel_from_json(io::parse(io::to_json(f).dump()));
    EXPECT_EQ(back.domain(), a);
    EXPECT_EQ(back.codomain(), b);
    EXPECT_LT((back.matrix() - f.matrix()).norm(), 1e-15);
}

TEST(Io, KrausForm) {
    Json j = io::parse(R"({"domain": {"blocks": [2]}, "codomain": {"blocks": [2]}, "kind": "kraus",
                           "kraus": [[[0, 1], [1, 0]]]})");
    Channel f = io::channel_from_json(j);
    EXPECT_TRUE(is_deterministic(f).passed());
    j["domain"]["blocks"] = {1, 1};
    EXPECT_NE(message_of([&] { io::channel_from_json(j); }).find("single-block"), std::string::npos);
}

TEST(Io, RaggedMatrixNamesPath) {
    Json j = io::parse(R"({"domain": {"blocks": [1]}, "codomain": {"blocks": [1, 1]}, "kind": "matrix",
                           "matrix": [[1], [1, 2]]})");
    std::string msg = message_of([&] { io::channel_from_json(j); });
    EXPECT_NE(msg.find("$.matrix[1]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("expected 1 entries, got 2"), std::string::npos) << msg;
}

TEST(Io, MalformedJsonHasLineAndColumn) {
    std::string msg = message_of([] { io::parse("{\n  \"a\": [1, 2\n}", "x.json"); });
    EXPECT_EQ(msg.rfind("InvalidInput: x.json:3:", 0), 0u) << msg;
}

TEST(Io, MissingFieldAndBadTypes) {
    EXPECT_NE(message_of([] { io::channel_from_json(Json{{"domain", {{"blocks", {2}}}}}); }).find("codomain"),
              std::string::npos);
    EXPECT_NE(message_of([] { io::shape_from_json(Json{{"blocks", {2, 0}}}); }).find("$.blocks"), std::string::npos);
    EXPECT_NE(message_of([] { io::complex_from_json(Json("x"), "$.z"); }).find("$.z"), std::string::npos);
    EXPECT_THROW(io::read_file("/nonexistent/file.json"), Error);
}

TEST(Io, StateValidation) {
    Json ok = io::parse(R"({"shape": {"blocks": [1, 1]}, "density": [[[0.25]], [[0.75]]]})");
    State s = io::state_from_json(ok);
    EXPECT_NEAR(s.density().block(1)(0, 0).real(), 0.75, 0);
    Json bad = ok;
    bad["density"][1][0][0] = 0.5;
    message_of([&] { io::state_from_json(bad); }, ErrorKind::InvalidState);
    Json complex_entry = io::parse(R"({"shape": {"blocks": [2]}, "density": [[[0.5, [0, 0.5]], [[0, -0.5], 0.5]]]})");
    State c = io::state_from_json(complex_entry);
    EXPECT_EQ(c.density().block(0)(0, 1), Complex(0, 0.5));
}

TEST(Io, Rationals) {
    EXPECT_EQ(io::rational_from_json(Json("3/6"), "$"), Rational(1) / 2);
    EXPECT_EQ(io::rational_from_json(Json(2), "$"), Rational(2));
    message_of([] { io::rational_from_json(Json("1/0"), "$"); });
    message_of([] { io::rational_from_json(Json("abc"), "$"); });
    Json k = io::parse(R"({"rows": 2, "cols": 1, "entries": [["1/3"], ["2/3"]]})");
    EXPECT_TRUE(io::is_exact_kernel(k));
    EXPECT_EQ(io::kernel_rational(k)(1, 0), Rational(2) / 3);
    Json kd = io::parse(R"({"rows": 2, "cols": 1, "entries": [[0.25], [0.75]]})");
    EXPECT_FALSE(io::is_exact_kernel(kd));
    EXPECT_NEAR(io::kernel_double(kd)(1, 0), 0.75, 0);
    Json p = io::parse(R"({"prob": ["1/2", "1/2"]})");
    EXPECT_TRUE(io::is_exact_prob(p));
    EXPECT_EQ(io::to_json(io::prob_rational(p))["prob"][0], "1/2");
}

TEST(Io, ReportJson) {
    PropertyReport r = is_cp(transpose_channel(AlgebraShape::matrix(2)));
    Json j = io::to_json(r);
    EXPECT_EQ(j["verdict"], "fail");
    EXPECT_TRUE(j.contains("witness"));
    EXPECT_FALSE(j["witness"]["inputs"].empty());
}
