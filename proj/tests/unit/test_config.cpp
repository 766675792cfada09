// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "anisub/cli.hpp"
#include "anisub/config.hpp"
#include "anisub/error.hpp"

using namespace anisub;
using namespace anisub::cli;
namespace fs = std::filesystem;

namespace {

ConfigError parse_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected ConfigError for:\n" << text);
  return ConfigError("", "");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("anisub-unit-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("empty text yields the defaults") {
  const auto c = parse_config("");
  CHECK(c.seed == 42);
  CHECK(c.threads == 1);
  CHECK(c.format == "csv");
  CHECK(model_kind(c.model) == "spectral-stable");
  CHECK(c.invert.dx == 0.002);
  CHECK(c.verify.budget == 100000);
  CHECK(c.ctrw.c_values.size() == 4);
}

TEST_CASE("shipped configurations parse and round-trip") {
  for (const char* name : {"default.conf", "ctmc.conf", "independent.conf", "density.conf"}) {
    INFO(name);
    const auto c = load_config(std::string(ANISUB_CONFIG_DIR) + "/" + name);
    const std::string text = to_config_text(c);
    const auto again = parse_config(text);
    CHECK(to_config_text(again) == text);
    CHECK(model_kind(again.model) == model_kind(c.model));
  }
}

TEST_CASE("comments, quoting and multi-line arrays") {
  const auto c = parse_config(
      "seed = 7  # trailing\n"
      "[ctmc]\n"
      "states1 = [\"a#1\", b]\n"
      "a = [[0.25, 0.75],\n"
      "     [1, 0]]\n");
  CHECK(c.seed == 7);
  REQUIRE(c.ctmc.spec.states1.size() == 2);
  CHECK(c.ctmc.spec.states1[0] == "a#1");
  CHECK(c.ctmc.spec.a[0][1] == 0.75);
  CHECK(c.key_lines.at("ctmc.a") == 4);
}

TEST_CASE("errors carry the qualified field and line") {
  auto e = parse_error("[model]\nalpha = 1.5\n");
  CHECK(e.field() == "model.alpha");
  CHECK(e.line() == 2);
  CHECK(std::string(e.what()).find("1.5") != std::string::npos);

  e = parse_error("seed = 1\n\n[model]\nalhpa = 0.5\n");
  CHECK(e.field() == "model.alhpa");
  CHECK(e.line() == 4);

  e = parse_error("[invert]\nt1 = 1\nt1 = 2\n");
  CHECK(e.field() == "invert.t1");
  CHECK(e.line() == 3);

  e = parse_error("[nosuch]\n");
  CHECK(e.line() == 1);

  e = parse_error("[invert]\nn_reps = many\n");
  CHECK(e.field() == "invert.n_reps");

  e = parse_error("format = tsv\n");
  CHECK(e.field() == "format");

  e = parse_error("[ctmc]\nstates1 = [a, b]\na = [[0.5, 0.4], [0, 1]]\n");
  CHECK(e.field() == "ctmc.a");

  e = parse_error("[ctrw]\nc_values = [1, 2\n");
  CHECK(e.field().rfind("ctrw", 0) == 0);

  e = parse_error("[verify]\nidentities = [bogus]\n");
  CHECK(e.field() == "verify.identities");
}

TEST_CASE("model keys are checked against the kind") {
  CHECK(parse_error("[model]\nkind = spectral-stable\nscale1 = 2\n").field() == "model.scale1");
  CHECK(parse_error("[model]\nc = 1\nkappa = 1\n").field().rfind("model", 0) == 0);
  CHECK(parse_error("[model]\nkind = nonsense\n").field() == "model.kind");
  CHECK(parse_error("[model]\ndensity_nodes = [0.5]\n").field().rfind("model", 0) == 0);
  const auto c = parse_config("[model]\nkind = independent-stable\nalpha = 1\nscale1 = 2\n");
  CHECK(model_kind(c.model) == "independent-stable");
}

TEST_CASE("unknown command is a configuration error") {
  std::ostringstream diag;
  CHECK(run("nosuch", RunOptions{}, diag) == kConfigError);
  CHECK(diag.str().find("nosuch") != std::string::npos);
}

TEST_CASE("simulate output is reproducible and self-describing") {
  const auto dir = scratch("simulate");
  write_file(dir / "run.conf", "seed = 3\n[simulate]\nx_max = 1\ndx = 0.01\nn_paths = 2\n");
  RunOptions o;
  o.config_path = (dir / "run.conf").string();
  std::ostringstream diag;
  o.out_dir = (dir / "a").string();
  REQUIRE(run("simulate", o, diag) == kSuccess);
  o.out_dir = (dir / "b").string();
  REQUIRE(run("simulate", o, diag) == kSuccess);
  CHECK(slurp(dir / "a" / "path.csv") == slurp(dir / "b" / "path.csv"));
  CHECK(slurp(dir / "a" / "config.echo") == slurp(dir / "b" / "config.echo"));
  const auto echo = parse_config(slurp(dir / "a" / "config.echo"));
  CHECK(echo.seed == 3);
  const auto meta = nlohmann::json::parse(slurp(dir / "a" / "meta.json"));
  CHECK(meta["seed"] == 3);
  CHECK(meta["seed_source"] == "config");
  CHECK(meta["exit_code"] == 0);
  CHECK(meta["command"] == "simulate");
}

TEST_CASE("seed precedence: flag, environment, config") {
  const auto dir = scratch("seed");
  write_file(dir / "run.conf", "seed = 3\n[simulate]\nx_max = 0.1\n");
  RunOptions o;
  o.config_path = (dir / "run.conf").string();
  o.out_dir = (dir / "env").string();
  std::ostringstream diag;
  ::setenv("ANISUB_SEED", "11", 1);
  REQUIRE(run("simulate", o, diag) == kSuccess);
  auto meta = nlohmann::json::parse(slurp(dir / "env" / "meta.json"));
  CHECK(meta["seed"] == 11);
  CHECK(meta["seed_source"] == "ANISUB_SEED");
  o.seed = 99;
  o.out_dir = (dir / "flag").string();
  REQUIRE(run("simulate", o, diag) == kSuccess);
  meta = nlohmann::json::parse(slurp(dir / "flag" / "meta.json"));
  CHECK(meta["seed"] == 99);
  CHECK(meta["seed_source"] == "flag");
  CHECK(parse_config(slurp(dir / "flag" / "config.echo")).seed == 99);
  ::setenv("ANISUB_SEED", "not-a-number", 1);
  o.seed.reset();
  CHECK(run("simulate", o, diag) == kConfigError);
  ::unsetenv("ANISUB_SEED");
}

TEST_CASE("ndjson format and truncation exit code") {
  const auto dir = scratch("format");
  write_file(dir / "run.conf",
             "[invert]\nt1 = 100\nt2 = 100\ndx = 0.01\nn_reps = 4\nmax_cells = 10\n");
  RunOptions o;
  o.config_path = (dir / "run.conf").string();
  o.out_dir = (dir / "out").string();
  o.format = "ndjson";
  std::ostringstream diag;
  CHECK(run("invert", o, diag) == kBudgetExhausted);
  const std::string data = slurp(dir / "out" / "inverse.ndjson");
  CHECK(data.find("\"truncated\":true") != std::string::npos);
  o.format = "xml";
  CHECK(run("invert", o, diag) == kConfigError);
}
