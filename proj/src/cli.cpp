// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <variant>

#include "anisub/config.hpp"
#include "anisub/ctrw.hpp"
#include "anisub/error.hpp"
#include "anisub/estimate.hpp"
#include "anisub/inverse.hpp"
#include "anisub/io.hpp"
#include "anisub/simulate.hpp"
#include "anisub/timechange.hpp"
#include "anisub/verify.hpp"

namespace anisub::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Stream tags of the per-command replicate streams.
constexpr std::uint32_t kSimulateTag = 0x10;
constexpr std::uint32_t kInvertTag = 0x11;
constexpr std::uint32_t kTrajectoryTag = 0x12;
constexpr std::uint32_t kMsdTag = 0x13;
constexpr std::uint32_t kPoissonTag = 0x14;
constexpr std::uint32_t kCtmcTag = 0x15;

using Cell = std::variant<double, std::uint64_t, std::string, bool>;

// Rows written as CSV (header line first) or as one JSON object per line.
class TableWriter {
 public:
  TableWriter(const fs::path& file, std::vector<std::string> columns, bool ndjson)
      : os_(file, std::ios::binary), columns_(std::move(columns)), ndjson_(ndjson) {
    if (!os_) throw std::runtime_error("cannot write " + file.string());
    if (!ndjson_) {
      for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
      os_ << '\n';
    }
  }

  void row(const std::vector<Cell>& cells) {
    if (ndjson_) {
      json obj = json::object();
      for (std::size_t i = 0; i < cells.size(); ++i) {
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) {
                if (std::isfinite(v)) {
                  obj[columns_[i]] = v;
                } else {
                  obj[columns_[i]] = nullptr;
                }
              } else {
                obj[columns_[i]] = v;
              }
            },
            cells[i]);
      }
      os_ << obj.dump() << '\n';
      return;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) os_ << format_number(v);
            } else if constexpr (std::is_same_v<T, bool>) {
              os_ << (v ? 1 : 0);
            } else {
              os_ << v;
            }
          },
          cells[i]);
    }
    os_ << '\n';
  }

 private:
  std::ofstream os_;
  std::vector<std::string> columns_;
  bool ndjson_;
};

// Per-replicate records gathered block by block in replicate order.
template <class T>
struct Records {
  std::vector<T> items;
  void merge(const Records& other) { items.insert(items.end(), other.items.begin(), other.items.end()); }
};

json estimate_json(const MCEstimate& e) {
  return json{{"mean", e.mean}, {"se", e.se()}, {"n", e.n}};
}

struct Context {
  RunConfig config;
  fs::path out;
  bool ndjson = false;
  ParallelOptions parallel;
  std::vector<std::string> files;
  std::ostream* diag = nullptr;

  std::string ext() const { return ndjson ? ".ndjson" : ".csv"; }

  fs::path file(const std::string& name) {
    files.push_back(name);
    return out / name;
  }

  void write_json(const std::string& name, const json& j) {
    std::ofstream os(file(name), std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (out / name).string());
    os << j.dump(2) << '\n';
  }
};

int run_simulate(Context& ctx) {
  const auto& p = ctx.config.simulate;
  TableWriter table(ctx.file("path" + ctx.ext()), {"path", "x", "h1", "h2"}, ctx.ndjson);
  for (std::uint64_t k = 0; k < p.n_paths; ++k) {
    const auto path = simulate::sample_path(ctx.config.model, p.x_max, p.dx,
                                            RngSpec{ctx.config.seed, stream_id(kSimulateTag, k)});
    for (std::size_t i = 0; i <= path.cells(); ++i) {
      table.row({k, static_cast<double>(i) * path.dx, path.h1[i], path.h2[i]});
    }
  }
  return kSuccess;
}

int run_invert(Context& ctx) {
  const auto& p = ctx.config.invert;
  const simulate::CellStepper stepper(ctx.config.model, p.dx);
  const auto samples = reduce_blocks<Records<inverse::InverseSample>>(
      p.n_reps, ctx.parallel, [&](std::uint64_t begin, std::uint64_t end) {
        Records<inverse::InverseSample> out;
        for (std::uint64_t r = begin; r < end; ++r) {
          Rng rng(RngSpec{ctx.config.seed, stream_id(kInvertTag, r)});
          out.items.push_back(inverse::sample_inverse(stepper, p.t1, p.t2, rng, p.max_cells));
        }
        return out;
      });

  TableWriter table(ctx.file("inverse" + ctx.ext()),
                    {"rep", "l1", "l2", "on_diagonal", "truncated"}, ctx.ndjson);
  VectorMoments moments(2);
  std::uint64_t diagonal = 0;
  std::uint64_t truncated = 0;
  for (std::size_t r = 0; r < samples.items.size(); ++r) {
    const auto& s = samples.items[r];
    table.row({static_cast<std::uint64_t>(r), s.l1, s.l2, s.on_diagonal, s.truncated});
    if (s.truncated) {
      ++truncated;
      continue;
    }
    moments.add({s.l1, s.l2});
    if (s.on_diagonal) ++diagonal;
  }
  const double n = static_cast<double>(moments.n());
  json summary{{"t1", p.t1},
               {"t2", p.t2},
               {"dx", p.dx},
               {"n_reps", p.n_reps},
               {"mean_l1", moments.mean(0)},
               {"mean_l2", moments.mean(1)},
               {"covariance", moments.covariance(0, 1)},
               {"diagonal_frequency", n > 0 ? static_cast<double>(diagonal) / n : 0.0},
               {"truncated", truncated}};
  ctx.write_json("summary.json", summary);
  if (truncated > 0) {
    *ctx.diag << "anisub: " << truncated << " of " << p.n_reps
              << " replicates exhausted invert.max_cells\n";
    return kBudgetExhausted;
  }
  return kSuccess;
}

int run_subdiffuse(Context& ctx) {
  const auto& p = ctx.config.subdiffuse;
  const simulate::CellStepper stepper(ctx.config.model, p.dx);
  bool truncated = false;
  {
    TableWriter table(ctx.file("trajectories" + ctx.ext()), {"path", "t", "x1", "x2", "phase"},
                      ctx.ndjson);
    for (std::uint64_t k = 0; k < p.n_paths; ++k) {
      const auto traj = timechange::sample_subdiffusion(
          stepper, p.t_grid, RngSpec{ctx.config.seed, stream_id(kTrajectoryTag, k)}, p.max_cells);
      truncated = truncated || traj.truncated;
      for (const auto& pt : traj.points) {
        table.row({k, pt.t, pt.x1, pt.x2, std::string(timechange::phase_name(pt.phase))});
      }
    }
  }
  const auto msd = timechange::estimate_msd(ctx.config.model, p.t_grid, p.dx, p.n_reps,
                                            ctx.config.seed, kMsdTag, ctx.parallel, p.max_cells);
  {
    TableWriter table(ctx.file("msd" + ctx.ext()),
                      {"t", "mean1", "mean1_se", "msd1", "msd1_se", "msd2", "msd2_se"},
                      ctx.ndjson);
    for (std::size_t i = 0; i < msd.t.size(); ++i) {
      table.row({msd.t[i], msd.mean1[i].mean, msd.mean1[i].se(), msd.msd1[i].mean,
                 msd.msd1[i].se(), msd.msd2[i].mean, msd.msd2[i].se()});
    }
  }
  json phases = json::object();
  for (int k = 0; k < 4; ++k) {
    phases[timechange::phase_name(static_cast<timechange::Phase>(k))] = msd.phase_counts[k];
  }
  ctx.write_json("summary.json", json{{"dx", p.dx},
                                      {"n_reps", p.n_reps},
                                      {"slope1", msd.slope1},
                                      {"slope1_se", msd.slope1_se},
                                      {"slope2", msd.slope2},
                                      {"slope2_se", msd.slope2_se},
                                      {"phase_counts", phases},
                                      {"truncated", msd.truncated}});
  if (truncated || msd.truncated > 0) {
    *ctx.diag << "anisub: trajectories exhausted subdiffuse.max_cells\n";
    return kBudgetExhausted;
  }
  return kSuccess;
}

int run_poisson(Context& ctx) {
  const auto& p = ctx.config.poisson;
  const simulate::IncrementSampler sampler(ctx.config.model);
  using Pair = std::pair<std::uint64_t, std::uint64_t>;
  const auto counts = reduce_blocks<Records<Pair>>(
      p.n_reps, ctx.parallel, [&](std::uint64_t begin, std::uint64_t end) {
        Records<Pair> out;
        for (std::uint64_t r = begin; r < end; ++r) {
          Rng rng(RngSpec{ctx.config.seed, stream_id(kPoissonTag, r)});
          const auto c =
              timechange::sample_counts_exact(sampler, p.xi1, p.xi2, {p.t1}, {p.t2}, rng);
          out.items.emplace_back(c.first[0], c.second[0]);
        }
        return out;
      });
  TableWriter table(ctx.file("counts" + ctx.ext()), {"rep", "t1", "t2", "n1", "n2"}, ctx.ndjson);
  MCEstimate n1;
  MCEstimate n2;
  MCEstimate zero1;
  MCEstimate zero2;
  for (std::size_t r = 0; r < counts.items.size(); ++r) {
    const auto [a, b] = counts.items[r];
    table.row({static_cast<std::uint64_t>(r), p.t1, p.t2, a, b});
    n1.add(static_cast<double>(a));
    n2.add(static_cast<double>(b));
    zero1.add(a == 0 ? 1.0 : 0.0);
    zero2.add(b == 0 ? 1.0 : 0.0);
  }
  ctx.write_json("summary.json", json{{"xi1", p.xi1},
                                      {"xi2", p.xi2},
                                      {"t1", p.t1},
                                      {"t2", p.t2},
                                      {"mean_n1", estimate_json(n1)},
                                      {"mean_n2", estimate_json(n2)},
                                      {"p_zero_n1", estimate_json(zero1)},
                                      {"p_zero_n2", estimate_json(zero2)}});
  return kSuccess;
}

int run_ctmc(Context& ctx) {
  const auto& p = ctx.config.ctmc;
  const auto states = reduce_blocks<Records<timechange::CtmcState>>(
      p.n_reps, ctx.parallel, [&](std::uint64_t begin, std::uint64_t end) {
        Records<timechange::CtmcState> out;
        for (std::uint64_t r = begin; r < end; ++r) {
          out.items.push_back(timechange::sample_ctmc_timechanged(
              p.spec, ctx.config.model, p.t1, p.t2, p.dx,
              RngSpec{ctx.config.seed, stream_id(kCtmcTag, r)}, p.route));
        }
        return out;
      });
  TableWriter table(ctx.file("ctmc" + ctx.ext()), {"rep", "s1", "s2", "jumps1", "jumps2"},
                    ctx.ndjson);
  std::vector<std::uint64_t> occ1(p.spec.states1.size(), 0);
  std::vector<std::uint64_t> occ2(p.spec.states2.size(), 0);
  for (std::size_t r = 0; r < states.items.size(); ++r) {
    const auto& s = states.items[r];
    table.row({static_cast<std::uint64_t>(r), p.spec.states1[s.s1], p.spec.states2[s.s2],
               s.jumps1, s.jumps2});
    ++occ1[s.s1];
    ++occ2[s.s2];
  }
  auto freq = [&](const std::vector<std::string>& names, const std::vector<std::uint64_t>& occ) {
    json j = json::object();
    for (std::size_t i = 0; i < names.size(); ++i) {
      j[names[i]] = static_cast<double>(occ[i]) / static_cast<double>(p.n_reps);
    }
    return j;
  };
  ctx.write_json("summary.json", json{{"t1", p.t1},
                                      {"t2", p.t2},
                                      {"route", route_name(p.route)},
                                      {"n_reps", p.n_reps},
                                      {"occupancy1", freq(p.spec.states1, occ1)},
                                      {"occupancy2", freq(p.spec.states2, occ2)}});
  return kSuccess;
}

int run_ctrw(Context& ctx) {
  const auto* m = std::get_if<SpectralStable>(&ctx.config.model);
  if (!m) throw ConfigError("model.kind", "ctrw-sweep needs a spectral-stable model");
  if (m->alpha.is_drift_limit()) throw ConfigError("model.alpha", "ctrw-sweep needs alpha < 1");
  const ctrw::CtrwSpec spec(m->alpha, m->m);
  ctrw::SweepReport report;
  try {
    report = ctrw::convergence_sweep(spec, ctx.config.ctrw, ctx.config.seed, ctx.parallel);
  } catch (const ConfigError& e) {
    throw ConfigError("ctrw." + e.field(), e.what());
  }
  if (ctx.ndjson) {
    TableWriter table(ctx.file("sweep.ndjson"),
                      {"c", "ks_pos1", "ks_pos2", "ks_cnt1", "ks_cnt2", "noise_floor"}, true);
    for (const auto& r : report.rows) {
      table.row({r.c, r.ks_pos1, r.ks_pos2, r.ks_cnt1, r.ks_cnt2, r.noise_floor});
    }
  } else {
    std::ofstream os(ctx.file("sweep.csv"), std::ios::binary);
    ctrw::write_sweep_csv(os, report);
  }
  ctx.write_json("summary.json", json{{"critical", report.critical},
                                      {"inversions", report.inversions},
                                      {"noise_floor_counts", report.noise_cnt1},
                                      {"n_reps", ctx.config.ctrw.n_reps},
                                      {"n_ref", ctx.config.ctrw.n_ref}});
  return kSuccess;
}

int run_verify(Context& ctx) {
  const auto& p = ctx.config.verify;
  verify::SuiteOptions opts;
  opts.identities = p.identities;
  opts.budget = p.budget;
  opts.z_max = p.z_max;
  opts.dx = p.dx;
  opts.seed = ctx.config.seed;
  opts.parallel = ctx.parallel;
  std::vector<verify::Verdict> verdicts;
  try {
    verdicts = verify::run_identity_suite(ctx.config.model, opts);
  } catch (const ConfigError& e) {
    throw ConfigError("verify." + e.field(), e.what());
  }
  {
    std::ofstream os(ctx.file("verdicts.ndjson"), std::ios::binary);
    verify::write_verdicts_ndjson(os, verdicts);
  }
  std::size_t failed = 0;
  for (const auto& v : verdicts) {
    if (!v.pass) {
      ++failed;
      *ctx.diag << "FAIL " << v.name << " lhs=" << format_number(v.lhs)
                << " rhs=" << format_number(v.rhs) << " z=" << format_number(v.z) << '\n';
    }
  }
  *ctx.diag << "verify: " << verdicts.size() << " verdicts, " << failed << " failed\n";
  return failed == 0 ? kSuccess : kVerificationFailed;
}

std::string describe(const ConfigError& e, const std::string& path) {
  std::string out = "anisub: config error";
  if (!path.empty()) out += " in " + path;
  if (e.line() > 0) out += " line " + std::to_string(e.line());
  if (!e.field().empty()) out += " field '" + e.field() + "'";
  return out + ": " + e.what();
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"simulate", "invert",     "subdiffuse", "poisson",
                                              "ctmc",     "ctrw-sweep", "verify"};
  return names;
}

const char* version() { return "0.1.0"; }

int run(const std::string& command, const RunOptions& options, std::ostream& diag) {
  const auto started = std::chrono::steady_clock::now();
  const auto& names = commands();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    diag << "anisub: unknown command '" << command << "'\n";
    return kConfigError;
  }

  Context ctx;
  ctx.diag = &diag;
  std::string seed_source = "config";
  try {
    ctx.config = options.config_path.empty() ? RunConfig{} : load_config(options.config_path);
    if (options.config_path.empty()) seed_source = "default";
    if (const char* env = std::getenv("ANISUB_SEED"); env && *env) {
      char* end = nullptr;
      errno = 0;
      const unsigned long long s = std::strtoull(env, &end, 10);
      if (*end != '\0' || errno != 0 || env[0] == '-') {
        throw ConfigError("ANISUB_SEED", std::string("ANISUB_SEED is not a u64: ") + env);
      }
      ctx.config.seed = s;
      seed_source = "ANISUB_SEED";
    }
    if (options.seed) {
      ctx.config.seed = *options.seed;
      seed_source = "flag";
    }
    if (options.threads) {
      if (*options.threads < 1 || *options.threads > 1024) {
        throw ConfigError("threads", "--threads must lie in [1, 1024]");
      }
      ctx.config.threads = *options.threads;
    }
    if (options.format) {
      if (*options.format != "csv" && *options.format != "ndjson") {
        throw ConfigError("format", "--format must be csv or ndjson");
      }
      ctx.config.format = *options.format;
    }
  } catch (const ConfigError& e) {
    diag << describe(e, options.config_path) << '\n';
    return kConfigError;
  }

  ctx.ndjson = ctx.config.format == "ndjson";
  ctx.parallel.threads = ctx.config.threads;
  ctx.out = options.out_dir;

  int code = kSuccess;
  try {
    fs::create_directories(ctx.out);
    {
      std::ofstream echo(ctx.file("config.echo"), std::ios::binary);
      if (!echo) throw std::runtime_error("cannot write " + (ctx.out / "config.echo").string());
      echo << to_config_text(ctx.config);
    }
    if (command == "simulate") {
      code = run_simulate(ctx);
    } else if (command == "invert") {
      code = run_invert(ctx);
    } else if (command == "subdiffuse") {
      code = run_subdiffuse(ctx);
    } else if (command == "poisson") {
      code = run_poisson(ctx);
    } else if (command == "ctmc") {
      code = run_ctmc(ctx);
    } else if (command == "ctrw-sweep") {
      code = run_ctrw(ctx);
    } else {
      code = run_verify(ctx);
    }
  } catch (const ConfigError& e) {
    diag << describe(e, options.config_path) << '\n';
    code = kConfigError;
  } catch (const DomainError& e) {
    diag << "anisub: invalid parameters: " << e.what() << '\n';
    code = kConfigError;
  } catch (const TruncationError& e) {
    diag << "anisub: budget exhausted: " << e.what() << '\n';
    code = kBudgetExhausted;
  } catch (const std::exception& e) {
    diag << "anisub: " << e.what() << '\n';
    code = kInternalError;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  try {
    ctx.files.push_back("meta.json");
    json meta{{"version", version()},
              {"command", command},
              {"seed", ctx.config.seed},
              {"seed_source", seed_source},
              {"threads", ctx.config.threads},
              {"format", ctx.config.format},
              {"config", options.config_path},
              {"exit_code", code},
              {"wall_seconds", wall},
              {"files", ctx.files}};
    std::ofstream os(ctx.out / "meta.json", std::ios::binary);
    os << meta.dump(2) << '\n';
  } catch (const std::exception& e) {
    diag << "anisub: cannot write meta.json: " << e.what() << '\n';
    if (code == kSuccess) code = kInternalError;
  }
  return code;
}

}  // namespace anisub::cli
