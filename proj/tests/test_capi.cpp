// Copyright 2026 The ccmw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exercises the shared library through its public header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ccmw/ccmw.h"

namespace {

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(ccmw_version(), "1.0.0");
  EXPECT_STRNE(ccmw_status_string(CCMW_OK), "");
  EXPECT_STRNE(ccmw_status_string(CCMW_ERR_UNSUPPORTED), ccmw_status_string(CCMW_ERR_PARSE));
  EXPECT_STRNE(ccmw_status_string(static_cast<ccmw_status>(99)), "");
}

TEST(CApi, HamiltonianLifecycle) {
  ccmw_hamiltonian* h = nullptr;
  ASSERT_EQ(ccmw_hamiltonian_parse("jmixed:1,0,0.5", 3, &h), CCMW_OK);
  EXPECT_EQ(ccmw_hamiltonian_dim(h), 3);
  size_t needed = 0;
  char small[4];
  EXPECT_EQ(ccmw_hamiltonian_id(h, small, sizeof small, &needed), CCMW_OK);
  EXPECT_EQ(needed, std::string("jmixed:1,0,0.5").size() + 1);
  EXPECT_EQ(std::string(small), "jmi");
  std::vector<char> buf(needed);
  EXPECT_EQ(ccmw_hamiltonian_id(h, buf.data(), buf.size(), nullptr), CCMW_OK);
  EXPECT_STREQ(buf.data(), "jmixed:1,0,0.5");
  double re[9], im[9];
  ASSERT_EQ(ccmw_hamiltonian_matrix(h, re, im), CCMW_OK);
  EXPECT_EQ(re[0], -0.5);
  EXPECT_EQ(re[1], 1.0);
  EXPECT_EQ(re[2], 0.0);
  EXPECT_EQ(re[8], 0.5);
  for (double x : im) EXPECT_EQ(x, 0.0);
  ccmw_hamiltonian_free(h);
  ccmw_hamiltonian_free(nullptr);
}

TEST(CApi, ErrorsCarryMessages) {
  ccmw_hamiltonian* h = nullptr;
  EXPECT_EQ(ccmw_hamiltonian_parse("spin", 3, &h), CCMW_ERR_PARSE);
  EXPECT_EQ(h, nullptr);
  EXPECT_NE(std::string(ccmw_last_error()).find("spin"), std::string::npos);
  EXPECT_EQ(ccmw_hamiltonian_parse("jz", 9, &h), CCMW_ERR_OUT_OF_RANGE);
  EXPECT_EQ(ccmw_hamiltonian_parse(nullptr, 3, &h), CCMW_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ccmw_hamiltonian_parse("jz", 3, nullptr), CCMW_ERR_INVALID_ARGUMENT);
  double v = 0.0;
  EXPECT_EQ(ccmw_xi2(1.5, 1, 0, 0, &v), CCMW_ERR_OUT_OF_RANGE);
  EXPECT_EQ(ccmw_xi3_diagonal(1.0, &v), CCMW_OK);
  EXPECT_STREQ(ccmw_last_error(), "");
}

TEST(CApi, ClosedForms) {
  double v = 0.0;
  ASSERT_EQ(ccmw_xi2(0.6, 2, 0, 1, &v), CCMW_OK);
  EXPECT_NEAR(v, 2.8, 1e-14);
  ASSERT_EQ(ccmw_xi3_diagonal(1.0, &v), CCMW_OK);
  EXPECT_NEAR(v, 1.6949731712249416, 1e-12);
  ASSERT_EQ(ccmw_xi3_offdiagonal(2.0, 1.0, &v), CCMW_OK);
  EXPECT_NEAR(v, 8.0 / 3.0, 1e-15);

  ccmw_hamiltonian* h = nullptr;
  ASSERT_EQ(ccmw_hamiltonian_parse("jz", 5, &h), CCMW_OK);
  EXPECT_EQ(ccmw_analytic(h, 1.0, &v), CCMW_ERR_UNSUPPORTED);
  EXPECT_NE(std::string(ccmw_last_error()).find("no closed form for d=5 diagonal"),
            std::string::npos);
  ccmw_hamiltonian_free(h);
  ASSERT_EQ(ccmw_hamiltonian_parse("jx", 3, &h), CCMW_OK);
  ASSERT_EQ(ccmw_analytic(h, 1.0, &v), CCMW_OK);
  EXPECT_EQ(v, 2.0);
  ccmw_hamiltonian_free(h);
}

TEST(CApi, EstimateAndWitness) {
  ccmw_hamiltonian* h = nullptr;
  ASSERT_EQ(ccmw_hamiltonian_parse("jz", 3, &h), CCMW_OK);
  ccmw_optimizer_config cfg;
  ASSERT_EQ(ccmw_optimizer_config_default(3, &cfg), CCMW_OK);
  EXPECT_EQ(cfg.max_evaluations, 200000);
  EXPECT_EQ(cfg.restarts, 8);
  EXPECT_EQ(ccmw_optimizer_config_default(1, &cfg), CCMW_ERR_OUT_OF_RANGE);
  ASSERT_EQ(ccmw_optimizer_config_default(3, &cfg), CCMW_OK);
  cfg.max_evaluations = 30000;
  cfg.restarts = 3;

  ccmw_estimate* e = nullptr;
  ASSERT_EQ(ccmw_estimate_run(h, CCMW_MODE_PURE, 1.0, nullptr, &e), CCMW_OK);
  EXPECT_NEAR(ccmw_estimate_value(e), 1.6949731712249416, 2e-3);
  ccmw_estimate_free(e);

  ASSERT_EQ(ccmw_estimate_run(h, CCMW_MODE_PURE, 1.0, &cfg, &e), CCMW_OK);
  EXPECT_LE(ccmw_estimate_value(e), 1.6949731712249416 + 2e-3);
  EXPECT_TRUE(ccmw_estimate_feasible(e));
  EXPECT_LE(ccmw_estimate_constraint_violation(e), 1e-6);
  EXPECT_GT(ccmw_estimate_evaluations(e), 0);
  EXPECT_EQ(ccmw_estimate_seed(e), cfg.seed);

  double re[2][9], im[2][9];
  ASSERT_EQ(ccmw_estimate_witness(e, 0, re[0], im[0]), CCMW_OK);
  ASSERT_EQ(ccmw_estimate_witness(e, 1, re[1], im[1]), CCMW_OK);
  EXPECT_EQ(ccmw_estimate_witness(e, 2, re[1], im[1]), CCMW_ERR_INVALID_ARGUMENT);
  ccmw_state* s[2];
  double c[2], en[2];
  for (int k = 0; k < 2; ++k) {
    ASSERT_EQ(ccmw_state_from_matrix(3, re[k], im[k], &s[k]), CCMW_OK);
    ASSERT_EQ(ccmw_state_l1_coherence(s[k], &c[k]), CCMW_OK);
    ASSERT_EQ(ccmw_state_energy(s[k], h, &en[k]), CCMW_OK);
    EXPECT_NEAR(c[k], 1.0, 1e-6);
  }
  EXPECT_NEAR(en[0] - en[1], ccmw_estimate_value(e), 1e-9);
  ccmw_state_free(s[0]);
  ccmw_state_free(s[1]);

  ccmw_estimate* again = nullptr;
  ASSERT_EQ(ccmw_estimate_run(h, CCMW_MODE_PURE, 1.0, &cfg, &again), CCMW_OK);
  EXPECT_EQ(ccmw_estimate_value(again), ccmw_estimate_value(e));
  ccmw_estimate_free(again);
  ccmw_estimate_free(e);

  EXPECT_EQ(ccmw_estimate_run(h, CCMW_MODE_PURE, 2.5, &cfg, &e), CCMW_ERR_OUT_OF_RANGE);
  EXPECT_EQ(ccmw_estimate_run(nullptr, CCMW_MODE_PURE, 1.0, &cfg, &e), CCMW_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ccmw_estimate_run(h, CCMW_MODE_PURE, 1.0, &cfg, nullptr), CCMW_ERR_INVALID_ARGUMENT);
  ccmw_hamiltonian_free(h);
}

TEST(CApi, StatesErgotropyAndPassivity) {
  ccmw_state* s = nullptr;
  ASSERT_EQ(ccmw_state_from_json(R"({"dim": 3, "real": [0.2,0,0, 0,0.3,0, 0,0,0.5]})", &s),
            CCMW_OK);
  EXPECT_EQ(ccmw_state_dim(s), 3);
  ccmw_hamiltonian* jz = nullptr;
  ccmw_hamiltonian* jx = nullptr;
  ASSERT_EQ(ccmw_hamiltonian_parse("jz", 3, &jz), CCMW_OK);
  ASSERT_EQ(ccmw_hamiltonian_parse("jx", 3, &jx), CCMW_OK);
  double erg = 0.0;
  ASSERT_EQ(ccmw_ergotropy(s, jz, &erg), CCMW_OK);
  EXPECT_NEAR(erg, 0.6, 1e-12);
  ccmw_passive_result r{};
  ASSERT_EQ(ccmw_passive_check(s, jz, &r), CCMW_OK);
  EXPECT_FALSE(r.passive);
  EXPECT_NEAR(r.gain, 0.6, 1e-15);
  EXPECT_TRUE(r.cross_checked);
  EXPECT_TRUE(r.agrees);
  EXPECT_EQ(ccmw_passive_check(s, jx, &r), CCMW_ERR_INVALID_ARGUMENT);
  ccmw_hamiltonian* jz4 = nullptr;
  ASSERT_EQ(ccmw_hamiltonian_parse("jz", 4, &jz4), CCMW_OK);
  EXPECT_EQ(ccmw_ergotropy(s, jz4, &erg), CCMW_ERR_DIMENSION_MISMATCH);
  ccmw_hamiltonian_free(jz4);
  ccmw_hamiltonian_free(jz);
  ccmw_hamiltonian_free(jx);
  ccmw_state_free(s);

  const double bad[4] = {0.7, 0, 0, 0.7};
  EXPECT_EQ(ccmw_state_from_matrix(2, bad, nullptr, &s), CCMW_ERR_INVALID_STATE);
  EXPECT_EQ(ccmw_state_from_json("{", &s), CCMW_ERR_PARSE);
}

TEST(CApi, VerifyReport) {
  ccmw_hamiltonian* h = nullptr;
  ASSERT_EQ(ccmw_hamiltonian_parse("qubit:1,-1,0,0", 2, &h), CCMW_OK);
  ccmw_optimizer_config cfg;
  ASSERT_EQ(ccmw_optimizer_config_default(2, &cfg), CCMW_OK);
  cfg.max_evaluations = 20000;
  cfg.restarts = 2;
  ccmw_verify_report* rep = nullptr;
  ASSERT_EQ(ccmw_verify_run(h, 3, 2e-3, CCMW_MODE_PURE, &cfg, &rep), CCMW_OK);
  ASSERT_EQ(ccmw_verify_report_size(rep), 3u);
  EXPECT_TRUE(ccmw_verify_report_passed(rep));
  EXPECT_LE(ccmw_verify_report_max_gap(rep), 2e-3);
  ccmw_verify_row row;
  ASSERT_EQ(ccmw_verify_report_row(rep, 2, &row), CCMW_OK);
  EXPECT_EQ(row.coherence, 1.0);
  EXPECT_NEAR(row.analytic, 0.0, 1e-15);
  EXPECT_EQ(ccmw_verify_report_row(rep, 3, &row), CCMW_ERR_OUT_OF_RANGE);
  ccmw_verify_report_free(rep);
  ccmw_hamiltonian_free(h);
}

struct Captured {
  int warnings = 0;
  std::string last;
};

TEST(CApi, SweepWritesCsvAndLogsThroughCallback) {
  const std::string path = ::testing::TempDir() + "ccmw_capi_sweep.csv";
  const char* config = R"({"dimensions": [3], "hamiltonian": "jz",
      "coherence_grid": {"count": 3}, "modes": ["analytic"]})";
  ccmw_sweep_options opt{0, 0, 1, path.c_str()};
  size_t rows = 0, infeasible = 7;
  ASSERT_EQ(ccmw_sweep_run(config, &opt, &rows, &infeasible), CCMW_OK);
  EXPECT_EQ(rows, 3u);
  EXPECT_EQ(infeasible, 0u);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str().rfind("# ccmw-csv v1\n# generated ", 0), 0u);
  EXPECT_NE(text.str().find("\n3,jz,2,1,analytic,0,0,0,0,true\n"), std::string::npos);
  std::remove(path.c_str());

  Captured cap;
  ccmw_set_log_callback(
      [](int level, const char* msg, void* user) {
        auto* c = static_cast<Captured*>(user);
        if (level == CCMW_LOG_WARNING) ++c->warnings;
        c->last = msg;
      },
      &cap);
  const char* no_closed_form = R"({"dimensions": [4], "hamiltonian": "jz",
      "coherence_grid": {"count": 2}, "modes": ["analytic"]})";
  ASSERT_EQ(ccmw_sweep_run(no_closed_form, &opt, &rows, nullptr), CCMW_OK);
  EXPECT_EQ(rows, 0u);
  EXPECT_EQ(cap.warnings, 1);
  EXPECT_NE(cap.last.find("no closed form"), std::string::npos);
  ccmw_set_log_callback(nullptr, nullptr);
  std::remove(path.c_str());

  EXPECT_EQ(ccmw_sweep_run("{\"dimensions\": [9]}", &opt, nullptr, nullptr), CCMW_ERR_PARSE);
  ccmw_sweep_options no_path{0, 0, 1, nullptr};
  const char* pathless = R"({"dimensions": [3], "hamiltonian": "jz", "modes": ["analytic"]})";
  EXPECT_EQ(ccmw_sweep_run(pathless, &no_path, nullptr, nullptr), CCMW_ERR_INVALID_ARGUMENT);
  ccmw_sweep_options bad_dir{0, 0, 1, "/nonexistent/dir/out.csv"};
  EXPECT_EQ(ccmw_sweep_run(pathless, &bad_dir, nullptr, nullptr), CCMW_ERR_IO);
}

TEST(CApi, EllipseFile) {
  const std::string path = ::testing::TempDir() + "ccmw_capi_ellipse.csv";
  const double cs[] = {0.5, 2.0};
  ASSERT_EQ(ccmw_ellipse_write(cs, 2, path.c_str()), CCMW_OK);
  std::ifstream in(path);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) ++count;
  EXPECT_EQ(count, 2 + 2 * 512);
  std::remove(path.c_str());
  const double bad[] = {3.0};
  EXPECT_EQ(ccmw_ellipse_write(bad, 1, path.c_str()), CCMW_ERR_OUT_OF_RANGE);
}

}  // namespace
