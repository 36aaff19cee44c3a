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

#include "shlab/io/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "shlab/core/errors.h"

namespace shlab::io {

std::string version_string() { return "shtarkov-lab 1.0.0"; }

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ValidationError("expected a number or one of \"inf\", \"-inf\", \"nan\"");
}

Json numbers(std::span<const double> values) {
  Json j = Json::array();
  for (double v : values) j.push_back(number(v));
  return j;
}

Json ints(std::span<const int> values) {
  Json j = Json::array();
  for (int v : values) j.push_back(v);
  return j;
}

std::string serialize(const Json& document) { return document.dump(2) + "\n"; }

Json log_value_json(LogValue v) {
  Json j = Json::object();
  j["value_log"] = number(v.log());
  j["value_linear"] = number(v.linear());
  return j;
}

Json to_json(const DualGameResult& r) {
  Json j = Json::object();
  j["value"] = number(r.value);
  j["tree"] = tree_to_json(r.tree);
  j["path_scores"] = numbers(r.path_scores);
  j["distribution"] = numbers(r.distribution);
  j["entropy"] = number(r.entropy);
  j["expected_score"] = number(r.expected_score);
  return j;
}

Json to_json(const GameValueReport& r) {
  Json j = Json::object();
  j["primal_value"] = number(r.primal_value);
  j["dual_value"] = number(r.dual_value);
  j["worstcase_shtarkov"] = number(r.worstcase_shtarkov);
  j["grid_value"] = r.grid_value ? number(*r.grid_value) : Json(nullptr);
  j["max_abs_gap"] = number(r.max_abs_gap);
  return j;
}

Json to_json(const Transcript& t) {
  Json j = Json::object();
  j["contexts"] = ints(t.contexts);
  Json preds = Json::array();
  for (const auto& p : t.predictions) preds.push_back(numbers(p.probs()));
  j["predictions"] = std::move(preds);
  j["labels"] = ints(t.labels);
  j["losses"] = numbers(t.losses);
  j["cumulative_loss"] = number(t.cumulative_loss);
  j["best_expert_loss"] = number(t.best_expert_loss);
  j["regret"] = number(t.regret);
  j["regret_incremental"] = number(t.regret_incremental);
  return j;
}

Json to_json(const WorstRegretResult& r) {
  Json j = Json::object();
  j["value"] = number(r.value);
  Json seq = Json::object();
  seq["contexts"] = ints(r.contexts);
  seq["labels"] = ints(r.labels);
  j["worst_sequence"] = std::move(seq);
  j["sequences"] = r.sequences;
  return j;
}

Json to_json(const McEstimate& e) {
  Json j = Json::object();
  j["estimate"] = number(e.estimate);
  j["standard_error"] = number(e.standard_error);
  j["samples"] = e.samples;
  return j;
}

Json to_json(const RealTree& t) {
  Json j = Json::object();
  j["depth"] = t.depth();
  j["values"] = numbers(t.values());
  return j;
}

Json to_json(const EntropyResult& r) {
  Json j = Json::object();
  j["entropy"] = number(r.entropy);
  j["cover_size"] = r.cover_size;
  j["worst_tree"] = tree_to_json(r.worst_tree);
  j["trees_enumerated"] = r.trees_enumerated;
  return j;
}

Json to_json(const GlobalCoverResult& r) {
  Json j = Json::object();
  j["entropy"] = number(r.entropy);
  j["size"] = r.size;
  j["greedy_size"] = r.greedy_size;
  Json maps = Json::array();
  for (const auto& m : r.certificate.maps) maps.push_back(numbers(m.values()));
  j["maps"] = std::move(maps);
  return j;
}

Json to_json(const FatResult& r) {
  Json j = Json::object();
  j["dimension"] = r.dimension;
  j["tree"] = tree_to_json(r.tree);
  j["witness"] = to_json(r.witness);
  return j;
}

namespace {

Json choice_json(const BoundChoice& c) {
  Json j = Json::object();
  j["alpha"] = number(c.alpha);
  j["value"] = number(c.value);
  return j;
}

}  // namespace

Json to_json(const BoundReport& r) {
  Json j = Json::object();
  j["horizon"] = r.horizon;
  j["c"] = number(r.c);
  j["log_class_size"] = number(r.log_class_size);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x = Json::object();
    x["alpha"] = number(e.alpha);
    x["h_inf"] = number(e.h_inf);
    x["h_global"] = number(e.h_global);
    x["fat_dimension"] = e.fat_dimension;
    x["fat_lower"] = number(e.fat_lower);
    x["fat_check_holds"] = e.fat_check_holds;
    x["entropy_bound"] = number(e.entropy_bound);
    x["lipschitz_bound"] = number(e.lipschitz_bound);
    x["global_bound"] = number(e.global_bound);
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  j["exact_regret"] = r.exact_regret ? number(*r.exact_regret) : Json(nullptr);
  j["best_entropy"] = choice_json(r.best_entropy);
  j["best_lipschitz"] = choice_json(r.best_lipschitz);
  j["best_global"] = choice_json(r.best_global);
  j["all_bounds_valid"] = r.all_bounds_valid;
  j["global_dominates"] = r.global_dominates;
  j["fat_checks_hold"] = r.fat_checks_hold;
  return j;
}

Json to_json(const TruncationReport& r) {
  Json j = Json::object();
  j["horizon"] = r.horizon;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x = Json::object();
    x["delta"] = number(e.delta);
    x["regret"] = number(e.regret);
    x["truncated_regret"] = number(e.truncated_regret);
    x["b2_slack"] = number(e.b2_slack);
    x["b2_holds"] = e.b2_holds;
    x["log_sh"] = number(e.log_sh);
    x["log_sh_truncated"] = number(e.log_sh_truncated);
    x["chain_bound"] = number(e.chain_bound);
    x["chain_holds"] = e.chain_holds;
    x["shtarkov_side_holds"] = e.shtarkov_side_holds;
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  j["all_hold"] = r.all_hold;
  j["b2_slack_monotone"] = r.b2_slack_monotone;
  j["chain_monotone"] = r.chain_monotone;
  return j;
}

Json to_json(const LinLowerBoundReport& r) {
  Json j = Json::object();
  j["horizon"] = r.horizon;
  j["dim"] = r.dim;
  j["conditional_shtarkov_log"] = number(r.conditional_shtarkov_log);
  j["lower_bound"] = number(r.lower_bound);
  j["quarter_sqrt_t"] = number(r.quarter_sqrt_t);
  j["chain_holds"] = r.chain_holds;
  j["paths"] = r.paths;
  return j;
}

// ---------------------------------------------------------------------------
// Tables

namespace {

std::string cell(const Json& j) {
  if (j.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", j.get<double>());
    return buf;
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string align(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line.append(width[c] - r[c].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

void flatten(const Json& j, const std::string& path, std::vector<std::vector<std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
    }
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
  } else if (j.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + cell(j[i]);
    rows.push_back({path, s});
  } else {
    rows.push_back({path, cell(j)});
  }
}

std::string bound_table(const Json& r) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"alpha", "H_inf", "H_G", "fat(2a)", "entropy_bound", "lipschitz_bound",
                  "global_bound"});
  for (const auto& e : r["entries"]) {
    rows.push_back({cell(e["alpha"]), cell(e["h_inf"]), cell(e["h_global"]),
                    cell(e["fat_dimension"]), cell(e["entropy_bound"]), cell(e["lipschitz_bound"]),
                    cell(e["global_bound"])});
  }
  std::string out = align(rows);
  std::vector<std::vector<std::string>> summary;
  summary.push_back({"horizon", cell(r["horizon"])});
  summary.push_back({"c", cell(r["c"])});
  summary.push_back({"log|F|", cell(r["log_class_size"])});
  summary.push_back({"exact_regret", cell(r["exact_regret"])});
  summary.push_back({"best_entropy", cell(r["best_entropy"]["value"]) + " at alpha " +
                                         cell(r["best_entropy"]["alpha"])});
  summary.push_back({"best_lipschitz", cell(r["best_lipschitz"]["value"]) + " at alpha " +
                                           cell(r["best_lipschitz"]["alpha"])});
  summary.push_back({"best_global", cell(r["best_global"]["value"]) + " at alpha " +
                                        cell(r["best_global"]["alpha"])});
  summary.push_back({"all_bounds_valid", cell(r["all_bounds_valid"])});
  summary.push_back({"global_dominates", cell(r["global_dominates"])});
  return out + "\n" + align(summary);
}

std::string matrix_table(const Json& r) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"check", "status", "cases", "max_error", "detail"});
  for (const auto& e : r["matrix"]) {
    rows.push_back({cell(e["key"]), cell(e["status"]), cell(e["cases"]), cell(e["max_error"]),
                    cell(e["detail"])});
  }
  std::string out = align(rows);
  out += "\n" + align({{"passed", cell(r["passed"])},
                       {"failed", cell(r["failed"])},
                       {"skipped", cell(r["skipped"])}});
  return out;
}

}  // namespace

std::string render_table(const Json& report) {
  const Json* result = &report;
  std::string head;
  if (report.is_object() && report.contains("result")) {
    result = &report["result"];
    if (report.contains("command")) head = "command  " + cell(report["command"]) + "\n";
    if (report.contains("version")) head += "version  " + cell(report["version"]) + "\n";
    if (!head.empty()) head += "\n";
  }
  if (result->is_object() && result->contains("entries") && result->contains("best_entropy")) {
    return head + bound_table(*result);
  }
  if (result->is_object() && result->contains("matrix")) return head + matrix_table(*result);
  std::vector<std::vector<std::string>> rows;
  flatten(*result, "", rows);
  return head + align(rows);
}

}  // namespace shlab::io
