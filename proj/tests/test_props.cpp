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

#include <set>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qmarkov/error.hpp"
#include "qmarkov/props.hpp"

using namespace qmarkov;

TEST(Suites, RegisteredPerModule) {
    std::set<std::string> modules, names;
    for (const auto &s : suites()) {
        modules.insert(s.module);
        EXPECT_TRUE(names.insert(s.name).second) << s.name;
        EXPECT_FALSE(s.statement.empty());
        EXPECT_GE(s.max_dim, 1);
    }
    for (const char *m : {"matrix-kernel", "finalg", "channel", "state-ae", "bayes", "finstoch"}) {
        EXPECT_TRUE(modules.count(m)) << m;
    }
    EXPECT_THROW(find_suite("nosuch"), Error);
}

TEST(Suites, AllPassAtSmallBudget) {
    for (const auto &s : suites()) {
        SuiteResult r = run_suite(s, 12, 123);
        EXPECT_TRUE(r.ok()) << s.name << ": " << r.witness;
        EXPECT_EQ(r.passed + r.skipped + r.failed, 12);
    }
}

TEST(Runner, DeterministicForSeed) {
    const Suite &s = find_suite("bayes-compositional");
    SuiteResult a = run_suite(s, 16, 5), b = run_suite(s, 16, 5);
    EXPECT_EQ(a.passed, b.passed);
    EXPECT_EQ(a.skipped, b.skipped);
    Rng x = derived_rng(1, "label", 2), y = derived_rng(1, "label", 2), z = derived_rng(1, "label", 3);
    EXPECT_EQ(x(), y());
    EXPECT_NE(derived_rng(1, "label", 2)(), z());
}

TEST(Runner, FailureIsMinimized) {
    // fails whenever it is allowed to draw dimension 3 or more
    Suite bad{"dim-below-3", "test", "drawn dimension stays below 3", 6,
              [](Rng &rng, int max_dim, const Tolerance &) {
                  int d = std::uniform_int_distribution<int>(1, max_dim)(rng);
                  if (max_dim >= 3 && d >= 3) {
                      return TrialOutcome::fail("drew dimension " + std::to_string(d));
                  }
                  return TrialOutcome::pass();
              }};
    SuiteResult r = run_suite(bad, 32, 0);
    EXPECT_FALSE(r.ok());
    ASSERT_TRUE(r.failing_trial);
    EXPECT_FALSE(r.witness.empty());
    ASSERT_TRUE(r.minimized_dim);
    EXPECT_EQ(*r.minimized_dim, 3);
    EXPECT_EQ(r.minimized_witness, "drew dimension 3");
    std::string table = summary_table({r});
    EXPECT_NE(table.find("FAIL"), std::string::npos);
    EXPECT_NE(table.find("drew dimension 3"), std::string::npos);
    EXPECT_NE(table.find("0/1 suites ok"), std::string::npos);
    auto j = nlohmann::json::parse(r.to_json());
    EXPECT_EQ(j["minimized_dim"], 3);
}

TEST(Runner, ExceptionsCountAsFailures) {
    Suite throws{"throws", "test", "never throws", 2, [](Rng &, int, const Tolerance &) -> TrialOutcome {
                     throw Error(ErrorKind::Singular, "boom");
                 }};
    SuiteResult r = run_suite(throws, 3, 0);
    EXPECT_EQ(r.failed, 3);
    EXPECT_NE(r.witness.find("boom"), std::string::npos);
}

TEST(Generators, ShapesAndMapsRespectBounds) {
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        AlgebraShape s = random_shape(rng, 5);
        EXPECT_LE(s.total_dim(), 5);
        EXPECT_LE(s.num_blocks(), 2);
        AlgebraShape c = random_shape(rng, 3);
        Channel f = random_cpu(rng, s, c);
        EXPECT_TRUE(is_cpu(f).passed());
        EXPECT_TRUE(is_star_preserving(random_star_map(rng, s, c)).passed());
    }
}
