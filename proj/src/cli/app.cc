// Copyright 2026 The Shtarkov Lab Authors.
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

#include "shlab/cli/app.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <memory>
#include <string_view>
#include <utility>

#include "CLI11.hpp"
#include "shlab/cnml/forecaster.h"
#include "shlab/cnml/play.h"
#include "shlab/core/families.h"
#include "shlab/covers/bounds.h"
#include "shlab/covers/covers.h"
#include "shlab/game/game.h"
#include "shlab/io/report.h"
#include "shlab/linlab/linlab.h"
#include "shlab/shtarkov/subprob.h"
#include "shlab/shtarkov/sums.h"
#include "shlab/shtarkov/worst_case.h"
#include "shlab/truncation/truncation.h"
#include "shlab/verify/suite.h"

namespace shlab::cli {

using io::Json;

void validate_config(const RunConfig& c) {
  if (c.budget_trees == 0 || c.budget_seqs == 0 || c.budget_grid == 0) {
    throw ValidationError("budgets must be positive");
  }
  if (!(c.tolerance > 0.0)) throw ValidationError("--tolerance must be positive");
  if (c.horizon && *c.horizon < 0) throw ValidationError("--horizon must be >= 0");
  if (c.samples == 0) throw ValidationError("--samples must be positive");
}

void apply_budget_ceiling(RunConfig& c, const char* env_value) {
  if (env_value == nullptr || *env_value == '\0') return;
  const std::string_view s(env_value);
  std::uint64_t cap = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
  if (ec != std::errc() || ptr != s.data() + s.size() || cap == 0) {
    throw ValidationError("SHTARKOV_LAB_BUDGET must be a positive integer, got '" +
                          std::string(s) + "'");
  }
  c.budget_trees = std::min(c.budget_trees, cap);
  c.budget_seqs = std::min(c.budget_seqs, cap);
  c.budget_grid = std::min(c.budget_grid, cap);
}

namespace {

// Result payload plus the exit code it implies.
struct Payload {
  Json result;
  int exit_code = kExitOk;
};

class Context {
 public:
  explicit Context(const RunConfig& c) : c_(c) {}

  const RunConfig& config() const { return c_; }

  const io::ClassSpec& spec() {
    if (!spec_) {
      if (c_.spec_path.empty()) throw ValidationError("--spec is required for " + c_.command);
      spec_ = std::make_unique<io::ClassSpec>(io::load_class_spec(c_.spec_path));
    }
    return *spec_;
  }

  int horizon() const {
    if (!c_.horizon) throw ValidationError("--horizon is required for " + c_.command);
    return *c_.horizon;
  }

  ContextTree tree() {
    if (c_.tree_path.empty()) throw ValidationError("--tree is required for " + c_.command);
    return io::parse_tree(file(c_.tree_path), spec().labels, spec().contexts);
  }

  Prefix prefix() {
    if (c_.prefix_path.empty()) return {};
    return io::parse_prefix(file(c_.prefix_path), spec().labels, spec().contexts);
  }

  ContextConstraint constraint() {
    if (c_.constraint_path.empty()) return {};
    return io::parse_constraint(file(c_.constraint_path), spec().contexts);
  }

  RealFunctionClass functions() {
    try {
      return RealFunctionClass::from_class(spec().cls);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("covers need a binary class of non-sequential experts: ") +
                            e.what());
    }
  }

 private:
  static Json file(const std::string& path) { return io::read_json_file(path); }

  const RunConfig& c_;
  std::unique_ptr<io::ClassSpec> spec_;
};

void check_depth(const Context& ctx, int depth, const char* what) {
  const auto& h = ctx.config().horizon;
  if (h && *h != depth) {
    throw ValidationError(std::string(what) + " has depth " + std::to_string(depth) +
                          " but --horizon is " + std::to_string(*h));
  }
}

// ---------------------------------------------------------------------------
// shtarkov

Payload shtarkov_cmd(Context& ctx, const std::string& variant) {
  const RunConfig& c = ctx.config();
  const auto& spec = ctx.spec();
  Json r;
  if (variant == "contextfree") {
    r = io::log_value_json(shtarkov_contextfree(spec.cls, ctx.horizon(), c.budget_seqs));
  } else if (variant == "conditional") {
    if (c.contexts.empty()) throw ValidationError("--contexts is required for " + c.command);
    check_depth(ctx, static_cast<int>(c.contexts.size()), "--contexts");
    r = io::log_value_json(shtarkov_conditional(spec.cls, c.contexts, c.budget_seqs));
  } else if (variant == "contextual") {
    const ContextTree tree = ctx.tree();
    check_depth(ctx, tree.depth(), "--tree");
    r = io::log_value_json(shtarkov_contextual(spec.cls, tree, c.budget_seqs));
  } else if (variant == "prefix") {
    const ContextTree tree = ctx.tree();
    const Prefix prefix = ctx.prefix();
    r = io::log_value_json(shtarkov_prefix(spec.cls, tree, prefix, ctx.horizon(), c.budget_seqs));
  } else if (variant == "worstcase") {
    const auto w = worst_case_shtarkov(spec.cls, ctx.horizon(), ctx.prefix(), ctx.constraint(),
                                       c.budget_seqs);
    r = io::log_value_json(w.value);
    r["witness_tree"] = io::tree_to_json(w.tree);
  } else if (variant == "mc") {
    const ContextTree tree =
        c.tree_path.empty()
            ? ContextTree::constant(spec.labels,
                                    std::vector<int>(static_cast<std::size_t>(ctx.horizon()), 0))
            : ctx.tree();
    check_depth(ctx, tree.depth(), "--tree");
    require_budget("Monte Carlo samples", c.samples, c.budget_seqs);
    const McEstimate m = shtarkov_mc_estimate(spec.cls, tree, c.samples, c.seed);
    r = io::log_value_json(LogValue::from_linear(m.estimate));
    r["value_linear"] = io::number(m.estimate);
    r["standard_error"] = io::number(m.standard_error);
    r["samples"] = m.samples;
  } else if (variant == "general") {
    if (!c.measures_path.empty()) {
      const SubProbClass sp = io::parse_subprob(io::read_json_file(c.measures_path));
      r = io::log_value_json(general_shtarkov(sp));
    } else {
      const ContextTree tree = ctx.tree();
      const SubProbClass sp = induce_subprob(spec.cls, tree, ctx.prefix());
      r = io::log_value_json(general_shtarkov(sp));
    }
  }
  return {std::move(r)};
}

// ---------------------------------------------------------------------------
// game, cnml

Payload game_cmd(Context& ctx) {
  const RunConfig& c = ctx.config();
  const auto report = solve_game(ctx.spec().cls, ctx.horizon(), c.grid, ctx.constraint(),
                                 c.budget_seqs, c.budget_grid);
  return {io::to_json(report)};
}

std::unique_ptr<Forecaster> make_forecaster(Context& ctx) {
  const RunConfig& c = ctx.config();
  const auto& spec = ctx.spec();
  if (c.forecaster == "cnml") {
    return std::make_unique<CnmlForecaster>(spec.cls, ctx.horizon(), ctx.constraint(), c.budget_seqs);
  }
  if (c.forecaster == "uniform") return std::make_unique<UniformForecaster>(spec.labels);
  if (c.forecaster == "bayes") {
    if (!spec.cls.is_explicit()) throw ValidationError("the bayes forecaster needs an explicit class");
    return std::make_unique<BayesMixtureForecaster>(spec.cls);
  }
  throw ValidationError("unknown forecaster '" + c.forecaster + "'");
}

Payload cnml_cmd(Context& ctx, const std::string& sub) {
  const RunConfig& c = ctx.config();
  const auto& spec = ctx.spec();
  const int T = ctx.horizon();
  auto forecaster = make_forecaster(ctx);
  if (sub == "worst") {
    const auto r = exhaustive_worst_regret(*forecaster, spec.cls, T, ctx.constraint(), c.budget_seqs);
    Json j = io::to_json(r);
    j["forecaster"] = forecaster->name();
    return {std::move(j)};
  }
  std::unique_ptr<Adversary> adversary;
  if (c.adversary == "worstcase") {
    adversary = std::make_unique<WorstCaseAdversary>(spec.cls, T, ctx.constraint());
  } else if (c.adversary.rfind("sequence:", 0) == 0) {
    const std::string path = c.adversary.substr(9);
    const Prefix seq = io::parse_prefix(io::read_json_file(path), spec.labels, spec.contexts);
    if (!seq.complete() || static_cast<int>(seq.length()) != T) {
      throw ValidationError(path + ": sequence must have " + std::to_string(T) +
                            " contexts and labels");
    }
    adversary = std::make_unique<SequenceAdversary>(seq.contexts(), seq.labels());
  } else {
    throw ValidationError("--adversary must be 'worstcase' or 'sequence:FILE'");
  }
  const Transcript t = play_game(*forecaster, *adversary, spec.cls, T);
  Json j = io::to_json(t);
  j["forecaster"] = forecaster->name();
  return {std::move(j)};
}

// ---------------------------------------------------------------------------
// covers, truncation, linlab

const std::vector<double>& default_alpha_grid() {
  static const std::vector<double> grid{1e-6, 0.05, 0.1, 0.2, 0.3, 0.5};
  return grid;
}

double single_alpha(const RunConfig& c) {
  if (c.alphas.size() != 1) throw ValidationError("--alpha takes exactly one value for " + c.command);
  if (!(c.alphas[0] >= 0.0)) throw ValidationError("--alpha must be >= 0");
  return c.alphas[0];
}

Payload covers_cmd(Context& ctx, const std::string& sub) {
  const RunConfig& c = ctx.config();
  const RealFunctionClass fcls = ctx.functions();
  const int T = ctx.horizon();
  if (sub == "entropy") {
    return {io::to_json(sequential_entropy(fcls, single_alpha(c), T, c.budget_trees, c.budget_seqs))};
  }
  if (sub == "global") {
    return {io::to_json(global_entropy(fcls, single_alpha(c), T, c.budget_seqs))};
  }
  if (sub == "fat") {
    const int depth = c.max_depth.value_or(T);
    return {io::to_json(fat_shattering_dim(fcls, single_alpha(c), depth, c.strict, c.budget_seqs))};
  }
  const std::vector<double>& grid = c.alphas.empty() ? default_alpha_grid() : c.alphas;
  return {io::to_json(entropy_regret_bounds(fcls, T, grid, c.budget_trees, c.budget_seqs))};
}

Payload truncate_cmd(Context& ctx) {
  const RunConfig& c = ctx.config();
  const std::vector<double> grid = c.deltas.empty() ? default_delta_grid() : c.deltas;
  return {io::to_json(truncated_regret_gap_check(ctx.spec().cls, ctx.horizon(), grid, c.budget_seqs))};
}

Payload linlab_cmd(Context& ctx) {
  const RunConfig& c = ctx.config();
  const int T = ctx.horizon();
  return {io::to_json(lin_lower_bound_experiment(T, c.dim.value_or(T), c.budget_seqs))};
}

Payload verify_cmd(Context& ctx) {
  const RunConfig& c = ctx.config();
  verify::SuiteConfig sc;
  sc.seed = c.seed;
  sc.budget_trees = c.budget_trees;
  sc.budget_seqs = c.budget_seqs;
  sc.budget_grid = c.budget_grid;
  sc.tolerance = c.tolerance;
  const auto report = verify::run_suite(sc);
  int code = kExitOk;
  if (report.failed > 0) {
    code = kExitFailure;
  } else if (report.skipped > 0) {
    code = kExitBudget;
  }
  return {verify::to_json(report), code};
}

Payload dispatch(Context& ctx) {
  const std::string& cmd = ctx.config().command;
  const auto space = cmd.find(' ');
  const std::string head = cmd.substr(0, space);
  const std::string sub = space == std::string::npos ? "" : cmd.substr(space + 1);
  if (head == "shtarkov") return shtarkov_cmd(ctx, sub);
  if (head == "game") return game_cmd(ctx);
  if (head == "cnml") return cnml_cmd(ctx, sub);
  if (head == "covers") return covers_cmd(ctx, sub);
  if (head == "truncate") return truncate_cmd(ctx);
  if (head == "linlab") return linlab_cmd(ctx);
  if (head == "verify") return verify_cmd(ctx);
  throw ValidationError("unknown command '" + cmd + "'");
}

Json config_echo(const RunConfig& c) {
  Json j = Json::object();
  if (!c.spec_path.empty()) j["spec"] = c.spec_path;
  j["horizon"] = c.horizon ? Json(*c.horizon) : Json(nullptr);
  j["seed"] = c.seed;
  j["budget_trees"] = c.budget_trees;
  j["budget_seqs"] = c.budget_seqs;
  j["budget_grid"] = c.budget_grid;
  j["grid"] = c.grid ? io::number(*c.grid) : Json(nullptr);
  j["tolerance"] = io::number(c.tolerance);
  if (!c.tree_path.empty()) j["tree"] = c.tree_path;
  if (!c.prefix_path.empty()) j["prefix"] = c.prefix_path;
  if (!c.constraint_path.empty()) j["constraint"] = c.constraint_path;
  if (!c.measures_path.empty()) j["measures"] = c.measures_path;
  if (!c.contexts.empty()) j["contexts"] = c.contexts;
  const auto& cmd = c.command;
  if (cmd == "shtarkov mc") j["samples"] = c.samples;
  if (cmd == "cnml play") j["adversary"] = c.adversary;
  if (cmd.rfind("cnml", 0) == 0) j["forecaster"] = c.forecaster;
  if (!c.alphas.empty()) j["alpha"] = io::numbers(c.alphas);
  if (!c.deltas.empty()) j["delta_grid"] = io::numbers(c.deltas);
  if (c.dim) j["dim"] = *c.dim;
  if (c.max_depth) j["max_depth"] = *c.max_depth;
  if (cmd == "covers fat") j["strict"] = c.strict;
  return j;
}

}  // namespace

RunOutput run(const RunConfig& config) {
  RunOutput out;
  try {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();
    Context ctx(config);
    Payload p = dispatch(ctx);
    Json report = Json::object();
    report["command"] = config.command;
    report["config"] = config_echo(config);
    report["result"] = std::move(p.result);
    if (config.timing) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      report["wall_time_seconds"] = dt.count();
    }
    report["version"] = io::version_string();
    out.out = config.out == OutputFormat::kJson ? io::serialize(report) : io::render_table(report);
    out.exit_code = p.exit_code;
  } catch (const BudgetExceeded& e) {
    out = {kExitBudget, "", std::string("budget exceeded: ") + e.what() + "\n"};
  } catch (const ValidationError& e) {
    out = {kExitValidation, "", std::string("validation error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    out = {kExitFailure, "", std::string("error: ") + e.what() + "\n"};
  }
  return out;
}

namespace {

std::string command_path(const CLI::App* app) {
  for (const CLI::App* sub : app->get_subcommands()) {
    const std::string rest = command_path(sub);
    return rest.empty() ? sub->get_name() : sub->get_name() + " " + rest;
  }
  return "";
}

}  // namespace

RunOutput run_cli(const std::vector<std::string>& args, const char* env_budget) {
  RunConfig c;
  std::string out_format = "json";
  std::optional<std::uint64_t> budget_all;

  CLI::App app("Exact Shtarkov sums, minimax regret games and their bounds", "shlab");
  app.require_subcommand(1);
  app.add_option("--spec", c.spec_path, "Class-spec JSON file");
  app.add_option("--horizon", c.horizon, "Horizon T");
  app.add_option("--seed", c.seed, "64-bit seed");
  app.add_option("--budget-trees", c.budget_trees, "Tree-enumeration budget");
  app.add_option("--budget-seqs", c.budget_seqs, "Sequence-enumeration budget");
  app.add_option("--budget-grid", c.budget_grid, "Simplex-lattice node budget");
  app.add_option("--budget", budget_all, "Sets every budget");
  app.add_option("--grid", c.grid, "Simplex-lattice step h for game solve");
  app.add_option("--out", out_format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--tolerance", c.tolerance, "Equality tolerance");
  app.add_flag("--timing", c.timing, "Add wall_time_seconds to the report");

  auto leaf = [](CLI::App* parent, const char* name, const char* desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  auto group = [](CLI::App& parent, const char* name, const char* desc) {
    CLI::App* s = parent.add_subcommand(name, desc);
    s->require_subcommand(1);
    s->fallthrough();
    return s;
  };

  CLI::App* sh = group(app, "shtarkov", "Shtarkov sums");
  using Leaf = std::pair<const char*, const char*>;
  for (const auto& [v, desc] : {
           Leaf{"contextfree", "Sum over label sequences with one context"},
           Leaf{"conditional", "Sum on a fixed context sequence (--contexts)"},
           Leaf{"contextual", "Sum on a context tree (--tree)"},
           Leaf{"prefix", "Continuation sum on a tree after a prefix (--tree, --prefix)"},
           Leaf{"worstcase", "Worst-case sum over all trees, with the witness tree"},
           Leaf{"mc", "Monte Carlo estimate on a tree"},
           Leaf{"general", "Sum of pointwise sups of a sub-probability class"}}) {
    CLI::App* s = leaf(sh, v, desc);
    s->add_option("--tree", c.tree_path, "Context tree JSON file");
    s->add_option("--prefix", c.prefix_path, "Prefix JSON file");
    s->add_option("--constraint", c.constraint_path, "Context constraint JSON file");
    s->add_option("--contexts", c.contexts, "Context sequence, comma separated")->delimiter(',');
    s->add_option("--samples", c.samples, "Monte Carlo samples");
    s->add_option("--measures", c.measures_path, "Sub-probability class JSON file");
  }
  CLI::App* game = group(app, "game", "Regret game");
  leaf(game, "solve", "Primal, dual and worst-case values")
      ->add_option("--constraint", c.constraint_path, "Context constraint JSON file");
  CLI::App* cn = group(app, "cnml", "Contextual NML");
  for (const auto& [v, desc] : {Leaf{"play", "Play one game and print the transcript"},
                                Leaf{"worst", "Worst regret over every adversary sequence"}}) {
    CLI::App* s = leaf(cn, v, desc);
    s->add_option("--forecaster", c.forecaster, "cnml, uniform or bayes")->check(CLI::IsMember({"cnml", "uniform", "bayes"}));
    s->add_option("--constraint", c.constraint_path, "Context constraint JSON file");
    if (std::string_view(v) == "play") {
      s->add_option("--adversary", c.adversary, "worstcase or sequence:FILE");
    }
  }
  CLI::App* cov = group(app, "covers", "Sequential covers and bounds");
  for (const auto& [v, desc] : {Leaf{"entropy", "Worst-case sequential cover entropy"},
                                Leaf{"global", "Global cover entropy"},
                                Leaf{"fat", "Sequential fat-shattering dimension"},
                                Leaf{"bounds", "Entropy regret bounds over a scale grid"}}) {
    CLI::App* s = leaf(cov, v, desc);
    s->add_option("--alpha", c.alphas, "Scale");
    s->add_option("--alpha-grid", c.alphas, "Scales, comma separated")->delimiter(',');
    if (std::string_view(v) == "fat") {
      s->add_option("--max-depth", c.max_depth, "Deepest tree tried (default: horizon)");
      s->add_flag("--strict", c.strict, "Strict margins");
    }
  }
  CLI::App* tr = group(app, "truncate", "Truncated classes");
  leaf(tr, "check", "Truncated regret inequality")
      ->add_option("--delta-grid", c.deltas, "Truncation levels, comma separated")
      ->delimiter(',');
  CLI::App* lin = group(app, "linlab", "Linear classes");
  leaf(lin, "lowerbound", "Conditional sum on an orthonormal design")
      ->add_option("--dim", c.dim, "Dimension d (default: horizon)");
  leaf(&app, "verify", "Run the cross-module check matrix");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return {kExitOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return {kExitValidation, "", std::string("validation error: ") + e.what() + "\n"};
  }

  c.command = command_path(&app);
  c.out = out_format == "table" ? OutputFormat::kTable : OutputFormat::kJson;
  if (budget_all) c.budget_trees = c.budget_seqs = c.budget_grid = *budget_all;
  try {
    apply_budget_ceiling(c, env_budget);
  } catch (const ValidationError& e) {
    return {kExitValidation, "", std::string("validation error: ") + e.what() + "\n"};
  }
  return run(c);
}

}  // namespace shlab::cli
