// Copyright 2026 The posmap authors
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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "posmap/bipartite.hpp"
#include "posmap/io.hpp"

using namespace posmap;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

std::string scratch_path(const std::string& name) {
  return std::string("/tmp/posmap_cli_test_") + name;
}

CliResult run_cli(const std::string& args) {
  const std::string out_path = scratch_path("stdout.json");
  const std::string cmd = std::string(POSMAP_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> " + scratch_path("stderr.txt");
  const int raw = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  res.out = ss.str();
  return res;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

json strip_runtime(const std::string& text) {
  json j = json::parse(text);
  j.erase("runtime_ms");
  return j;
}

}  // namespace

TEST_CASE("gen output parses and re-serializes identically") {
  const auto gen = run_cli("gen --kind state --dims 2,3 --seed 11");
  REQUIRE(gen.exit_code == 0);
  const json j = json::parse(gen.out);
  const MatrixRecord rec = matrix_from_json(j);
  CHECK(rec.to_bipartite().d1 == 2);
  CHECK(j.dump(2) + "\n" == gen.out);

  // Bit-determinism of the generator across invocations.
  const auto again = run_cli("gen --kind state --dims 2,3 --seed 11");
  CHECK(again.out == gen.out);
  const auto other_seed = run_cli("gen --kind state --dims 2,3 --seed 12");
  CHECK(other_seed.out != gen.out);
}

TEST_CASE("classify-map on the swap matrix") {
  const std::string path = scratch_path("swap.json");
  write_file(path, matrix_to_json(swap_operator(2).mat, 2, 2).dump());

  const auto res = run_cli("classify-map --in " + path + " --seed 5 --restarts 24");
  REQUIRE(res.exit_code == 0);
  const json rep = json::parse(res.out);
  bool checked_bp = false, checked_cp = false, checked_cocp = false, checked_dec = false;
  for (const auto& v : rep["verdicts"]) {
    const std::string prop = v["property"], status = v["status"];
    if (prop == "block-positive") {
      checked_bp = true;
      CHECK(status == "no-violation-found");
    } else if (prop == "cp") {
      checked_cp = true;
      CHECK(status == "certified-no");
      CHECK(v.contains("witness"));  // certified-no embeds its witness
    } else if (prop == "co-cp") {
      checked_cocp = true;
      CHECK(status == "certified-yes");
    } else if (prop == "decomposable") {
      checked_dec = true;
      CHECK(status == "certified-yes");
    }
  }
  CHECK(checked_bp);
  CHECK(checked_cp);
  CHECK(checked_cocp);
  CHECK(checked_dec);
}

TEST_CASE("classify-map accepts kraus and superop representations") {
  // Identity channel as a one-element Kraus list.
  const std::string kraus_path = scratch_path("kraus.json");
  json arr = json::array();
  arr.push_back(matrix_to_json(CMatrix::identity(2)));
  write_file(kraus_path, arr.dump());
  const auto res = run_cli("classify-map --rep kraus --in " + kraus_path + " --seed 1");
  REQUIRE(res.exit_code == 0);
  for (const auto& v : json::parse(res.out)["verdicts"]) {
    if (v["property"] == "cp") CHECK(v["status"] == "certified-yes");
    if (v["property"] == "member-D") CHECK(v["status"] == "no-violation-found");
  }

  // The identity superoperator is I_{n^2}.
  const std::string sop_path = scratch_path("superop.json");
  write_file(sop_path, matrix_to_json(CMatrix::identity(4)).dump());
  const auto res2 = run_cli("classify-map --rep superop --in " + sop_path + " --seed 1");
  REQUIRE(res2.exit_code == 0);
}

TEST_CASE("exit code contract") {
  const std::string bad_json = scratch_path("bad.json");
  write_file(bad_json, "{ not json");
  CHECK(run_cli("classify-map --in " + bad_json).exit_code == 2);

  const std::string bad_dims = scratch_path("baddims.json");
  write_file(bad_dims, matrix_to_json(CMatrix::identity(6)).dump());
  CHECK(run_cli("classify-map --in " + bad_dims).exit_code == 3);

  // analyze-state requires explicit factor dimensions.
  const std::string no_dims = scratch_path("nodims.json");
  write_file(no_dims, matrix_to_json(CMatrix::identity(4)).dump());
  CHECK(run_cli("analyze-state --in " + no_dims).exit_code == 3);

  // Not a state: trace 4.
  const std::string not_state = scratch_path("notstate.json");
  write_file(not_state, matrix_to_json(CMatrix::identity(4), 2, 2).dump());
  CHECK(run_cli("analyze-state --in " + not_state).exit_code == 4);

  // rn exit 5 on an absolute-continuity failure, verdict still emitted.
  const std::string id_choi = scratch_path("idchoi.json");
  write_file(id_choi, matrix_to_json(unnormalized_max_entangled(2).mat, 2, 2).dump());
  const std::string dep_choi = scratch_path("depchoi.json");
  write_file(dep_choi, matrix_to_json(0.5 * CMatrix::identity(4), 2, 2).dump());
  const auto rn_fail = run_cli("rn --phi " + dep_choi + " --psi " + id_choi);
  CHECK(rn_fail.exit_code == 5);
  const json rep = json::parse(rn_fail.out);
  CHECK(rep["verdicts"][0]["status"] == "certified-no");
}

TEST_CASE("rn scaling case through the CLI") {
  const std::string psi_path = scratch_path("psi.json");
  const std::string phi_path = scratch_path("phi.json");
  write_file(psi_path, matrix_to_json(0.5 * CMatrix::identity(4), 2, 2).dump());
  write_file(phi_path, matrix_to_json(0.25 * CMatrix::identity(4), 2, 2).dump());
  const auto res = run_cli("rn --phi " + phi_path + " --psi " + psi_path);
  REQUIRE(res.exit_code == 0);
  const json rep = json::parse(res.out);
  bool saw = false;
  for (const auto& v : rep["verdicts"]) {
    if (v["property"] != "rn-derivative") continue;
    saw = true;
    CHECK(v["value"].get<double>() < 1e-10);
    CHECK(v["domination_bound"].get<double>() == doctest::Approx(0.5).epsilon(1e-8));
    // D = Pi/2 = I/2 on the full support.
    const MatrixRecord d = matrix_from_json(v["derivative"]);
    CHECK(max_abs_diff(d.mat, 0.5 * CMatrix::identity(4)) < 1e-10);
  }
  CHECK(saw);
}

TEST_CASE("norms subcommand") {
  const std::string unit_path = scratch_path("unit.json");
  write_file(unit_path, matrix_to_json(CMatrix::identity(4), 2, 2).dump());
  const auto res = run_cli("norms --in " + unit_path + " --which pi --seed 2");
  REQUIRE(res.exit_code == 0);
  const json rep = json::parse(res.out);
  const auto& v = rep["verdicts"][0];
  CHECK(v["property"] == "pi-norm");
  CHECK(v["lower"].get<double>() >= 2.0 - 1e-6);
  CHECK(v["upper"].get<double>() <= 2.0 + 1e-6);

  const std::string zero_path = scratch_path("zero.json");
  write_file(zero_path, matrix_to_json(CMatrix(4, 4), 2, 2).dump());
  const auto zres = run_cli("norms --in " + zero_path + " --which all --seed 2");
  REQUIRE(zres.exit_code == 0);
  for (const auto& entry : json::parse(zres.out)["verdicts"]) {
    if (entry["property"] == "pi-norm" || entry["property"] == "epsilon-norm" ||
        entry["property"] == "alpha-norm") {
      CHECK(entry["lower"].get<double>() == 0.0);
      CHECK(entry["upper"].get<double>() == 0.0);
    }
  }

  // The Choi matrix of the identity map has alpha = 1.
  const std::string bell_path = scratch_path("bellchoi.json");
  write_file(bell_path, matrix_to_json(unnormalized_max_entangled(2).mat, 2, 2).dump());
  const auto ares = run_cli("norms --in " + bell_path + " --which alpha --seed 2");
  REQUIRE(ares.exit_code == 0);
  const json arep = json::parse(ares.out);
  const json& alpha = arep["verdicts"][0];
  CHECK(alpha["lower"].get<double>() <= 1.0 + 1e-9);
  CHECK(alpha["lower"].get<double>() >= 1.0 - 1e-9);
  CHECK(alpha["upper"].get<double>() >= 1.0 - 1e-9);
}

TEST_CASE("classify-map on I4/2 reports yes across the board") {
  const std::string path = scratch_path("halfid.json");
  write_file(path, matrix_to_json(0.5 * CMatrix::identity(4), 2, 2).dump());
  const auto res = run_cli("classify-map --in " + path + " --seed 3 --restarts 16");
  REQUIRE(res.exit_code == 0);
  for (const auto& v : json::parse(res.out)["verdicts"]) {
    const std::string prop = v["property"], status = v["status"];
    if (prop == "member-D0" || prop == "member-D") {
      CHECK(status == "no-violation-found");
    } else {
      CHECK(status == "certified-yes");
    }
  }
}

TEST_CASE("classify-map on the identity-map Choi matrix") {
  const std::string path = scratch_path("idchoi2.json");
  write_file(path, matrix_to_json(unnormalized_max_entangled(2).mat, 2, 2).dump());
  const auto res = run_cli("classify-map --in " + path + " --seed 3 --restarts 16");
  REQUIRE(res.exit_code == 0);
  for (const auto& v : json::parse(res.out)["verdicts"]) {
    if (v["property"] == "cp") CHECK(v["status"] == "certified-yes");
    if (v["property"] == "co-cp") CHECK(v["status"] == "certified-no");
    if (v["property"] == "member-D") CHECK(v["status"] == "no-violation-found");
  }
}

TEST_CASE("werner boundary through gen and analyze-state") {
  const std::string w_path = scratch_path("werner.json");
  const auto gen = run_cli("gen --kind werner --p 0.333333 --seed 1");
  REQUIRE(gen.exit_code == 0);
  write_file(w_path, gen.out);
  const auto below = run_cli("analyze-state --in " + w_path + " --seed 1");
  REQUIRE(below.exit_code == 0);
  for (const auto& v : json::parse(below.out)["verdicts"])
    if (v["property"] == "ppt") CHECK(v["status"] == "certified-yes");

  const auto gen2 = run_cli("gen --kind werner --p 0.5 --seed 1");
  write_file(w_path, gen2.out);
  const auto above = run_cli("analyze-state --in " + w_path + " --seed 1");
  for (const auto& v : json::parse(above.out)["verdicts"])
    if (v["property"] == "ppt") CHECK(v["status"] == "certified-no");
}

TEST_CASE("separable instances analyze as PPT") {
  const std::string sep_path = scratch_path("sep.json");
  const auto gen = run_cli("gen --kind separable --n 5 --dims 2,2 --seed 9");
  REQUIRE(gen.exit_code == 0);
  write_file(sep_path, gen.out);
  const auto res = run_cli("analyze-state --in " + sep_path + " --seed 9");
  REQUIRE(res.exit_code == 0);
  for (const auto& v : json::parse(res.out)["verdicts"])
    if (v["property"] == "ppt") CHECK(v["status"] == "certified-yes");
}

TEST_CASE("reports are byte-identical up to runtime_ms") {
  const std::string st_path = scratch_path("state.json");
  const auto gen = run_cli("gen --kind state --dims 2,2 --seed 21");
  write_file(st_path, gen.out);

  const auto a = run_cli("analyze-state --in " + st_path + " --seed 4 --samples 50");
  const auto b = run_cli("analyze-state --in " + st_path + " --seed 4 --samples 50");
  REQUIRE(a.exit_code == 0);
  CHECK(strip_runtime(a.out).dump() == strip_runtime(b.out).dump());

  const auto c = run_cli("classify-map --in " + st_path + " --seed 4 --restarts 12");
  const auto d = run_cli("classify-map --in " + st_path + " --seed 4 --restarts 12");
  CHECK(strip_runtime(c.out).dump() == strip_runtime(d.out).dump());

  // POSMAP_SEED env var acts as the seed fallback.
  const std::string cmd_env = std::string("POSMAP_SEED=4 ") + POSMAP_CLI_PATH +
                              " classify-map --in " + st_path + " --restarts 12 > " +
                              scratch_path("env.json") + " 2> /dev/null";
  REQUIRE(std::system(cmd_env.c_str()) == 0);
  std::ifstream env_in(scratch_path("env.json"));
  std::stringstream env_ss;
  env_ss << env_in.rdbuf();
  CHECK(strip_runtime(env_ss.str()).dump() == strip_runtime(c.out).dump());
}
