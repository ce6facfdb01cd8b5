// Copyright 2026 The qngcoh Authors
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


#include <cstring>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "qng/qng.h"

using nlohmann::json;

namespace {

struct Ctx {
    qng_context *p = nullptr;
    Ctx() {
        EXPECT_EQ(qng_context_create(&p), QNG_OK);
    }
    ~Ctx() {
        qng_context_destroy(p);
    }
};

json take(char *s) {
    json j = json::parse(s);
    qng_free_string(s);
    return j;
}

}  // namespace

TEST(CApi, version_and_status_strings) {
    EXPECT_STRNE(qng_version(), "");
    EXPECT_STREQ(qng_status_string(QNG_OK), "ok");
    EXPECT_STRNE(qng_status_string(QNG_ERR_NOT_CONVERGED), "unknown status");
}

TEST(CApi, threshold_struct_and_json) {
    Ctx c;
    qng_threshold_info info{};
    ASSERT_EQ(qng_threshold(c.p, QNG_KIND_GENUINE, 0, 2, &info), QNG_OK);
    EXPECT_NEAR(info.value, 0.86, 0.01);
    EXPECT_EQ(info.core_dim, 2);
    EXPECT_EQ(info.fock_index, -1);
    ASSERT_EQ(qng_threshold(c.p, QNG_KIND_GAUSSIAN_INTRINSIC, 0, 3, &info), QNG_OK);
    EXPECT_GE(info.fock_index, 0);
    char *s = nullptr;
    ASSERT_EQ(qng_threshold_json(c.p, QNG_KIND_CLASSICAL, 1, 0, &s), QNG_OK);
    const json j = take(s);
    EXPECT_EQ(j["pair"], json({0, 1}));
    EXPECT_NEAR(j["value"].get<double>(), 0.8578, 1e-4);
}

TEST(CApi, errors_are_codes_with_messages) {
    Ctx c;
    qng_threshold_info info{};
    EXPECT_EQ(qng_threshold(c.p, QNG_KIND_GENUINE, 2, 2, &info), QNG_ERR_INVALID_ARGUMENT);
    EXPECT_NE(std::string(qng_context_last_error(c.p)).find("distinct"), std::string::npos);
    EXPECT_EQ(qng_threshold(c.p, static_cast<qng_threshold_kind>(7), 0, 1, &info), QNG_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(qng_threshold(c.p, QNG_KIND_GENUINE, 0, 1, nullptr), QNG_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(qng_threshold(nullptr, QNG_KIND_GENUINE, 0, 1, &info), QNG_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(qng_context_set_truncation(c.p, 4), QNG_ERR_INVALID_ARGUMENT);
    char *s = nullptr;
    EXPECT_EQ(qng_simulate_json(c.p, "{not json", &s), QNG_ERR_CONFIG);
    EXPECT_EQ(qng_simulate_json(c.p, R"({"pair":[0,1],"delays":[0],"x":1})", &s), QNG_ERR_CONFIG);
    EXPECT_EQ(qng_mc_verify_json(c.p, QNG_KIND_CLASSICAL, 0, 1, 10, 1, &s, nullptr), QNG_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(qng_threshold(c.p, QNG_KIND_GENUINE, 0, 1, &info), QNG_OK);
    EXPECT_STREQ(qng_context_last_error(c.p), "");
}

TEST(CApi, certify_depth_mc_simulate) {
    Ctx c;
    char *s = nullptr;
    int any = 0;
    ASSERT_EQ(qng_certify_json(c.p, 0, 4, 0.84, 0.04, &s, &any), QNG_OK);
    EXPECT_EQ(any, 1);
    EXPECT_TRUE(take(s)["kinds"]["genuine"]["verdict"].get<bool>());
    double d = 0;
    ASSERT_EQ(qng_depth(c.p, 1.0, 0, 1, QNG_KIND_GENUINE, &d), QNG_OK);
    EXPECT_NEAR(d, 0.14, 0.01);
    long v = -1;
    ASSERT_EQ(qng_mc_verify_json(c.p, QNG_KIND_CLASSICAL, 0, 1, 2000, 3, &s, &v), QNG_OK);
    EXPECT_EQ(v, 0);
    EXPECT_EQ(take(s)["samples"], 2000);
    ASSERT_EQ(qng_simulate_json(c.p, R"({"pair":[0,2],"delays":[0]})", &s), QNG_OK);
    const json sim = take(s);
    EXPECT_NEAR(sim["results"][0]["points"][0]["contrast"].get<double>(), 1.0, 1e-6);
}

TEST(CApi, truncation_setting_applies) {
    Ctx c;
    ASSERT_EQ(qng_context_set_truncation(c.p, 64), QNG_OK);
    qng_threshold_info info{};
    ASSERT_EQ(qng_threshold(c.p, QNG_KIND_GENUINE, 0, 3, &info), QNG_OK);
    EXPECT_NEAR(info.value, 0.81, 0.01);
}
