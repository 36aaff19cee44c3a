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

// Errors, distributions, histories and context trees.

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "shlab/core/context_tree.h"
#include "shlab/core/distribution.h"
#include "shlab/core/errors.h"
#include "shlab/core/history.h"

namespace shlab {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  if (a == 0 || b == 0) return 0;
  return a > max / b ? max : a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) result = saturating_mul(result, base);
  return result;
}

void require_budget(const std::string& what, std::uint64_t required, std::uint64_t budget) {
  if (required > budget) throw BudgetExceeded(what, required, budget);
}

// ---------------------------------------------------------------------------
// Distribution

std::optional<std::string> check_distribution(std::span<const double> probs) {
  if (probs.empty()) return "empty probability vector";
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i]) || probs[i] < 0.0) {
      std::ostringstream os;
      os << "entry " << i << " = " << probs[i] << " is not a nonnegative real";
      return os.str();
    }
    total += probs[i];
  }
  if (std::fabs(total - 1.0) > kDistributionTolerance) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, total);
    return "probabilities sum to " + std::string(buf, res.ptr);
  }
  return std::nullopt;
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (auto err = check_distribution(probs_)) throw ValidationError("invalid distribution: " + *err);
}

Distribution Distribution::uniform(int labels) {
  if (labels < 1) throw ValidationError("label alphabet must be nonempty");
  return Distribution(std::vector<double>(static_cast<std::size_t>(labels), 1.0 / labels));
}

Distribution Distribution::point_mass(int labels, int label) {
  if (label < 0 || label >= labels) throw ValidationError("point mass label out of range");
  std::vector<double> p(static_cast<std::size_t>(labels), 0.0);
  p[static_cast<std::size_t>(label)] = 1.0;
  return Distribution(std::move(p));
}

Distribution Distribution::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("Bernoulli parameter outside [0, 1]");
  return Distribution({1.0 - p, p});
}

bool Distribution::strictly_positive() const {
  for (double p : probs_) {
    if (!(p > 0.0)) return false;
  }
  return true;
}

double Distribution::loss(int label) const {
  const double p = probs_.at(static_cast<std::size_t>(label));
  return p > 0.0 ? -std::log(p) : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Prefix and history indexing

Prefix::Prefix(std::vector<int> contexts, std::vector<int> labels)
    : contexts_(std::move(contexts)), labels_(std::move(labels)) {
  if (labels_.size() != contexts_.size() && labels_.size() + 1 != contexts_.size()) {
    throw ValidationError("prefix label length must equal the context length or be one shorter");
  }
}

void Prefix::validate(int labels, int contexts) const {
  for (int x : contexts_) {
    if (x < 0 || x >= contexts) throw ValidationError("prefix context out of alphabet");
  }
  for (int y : labels_) {
    if (y < 0 || y >= labels) throw ValidationError("prefix label out of alphabet");
  }
}

HistoryIndexer::HistoryIndexer(int labels, int contexts, int horizon)
    : labels_(labels), contexts_(contexts), horizon_(horizon) {
  if (labels < 1 || contexts < 1 || horizon < 0) {
    throw ValidationError("history indexer needs positive alphabets and horizon >= 0");
  }
  offsets_.assign(static_cast<std::size_t>(horizon) + 1, 0);
  std::uint64_t level = static_cast<std::uint64_t>(contexts);
  const std::uint64_t step = saturating_mul(static_cast<std::uint64_t>(contexts),
                                            static_cast<std::uint64_t>(labels));
  std::uint64_t total = 0;
  for (int t = 1; t <= horizon; ++t) {
    total = saturating_add(total, level);
    if (total > (std::uint64_t{1} << 40)) throw ValidationError("history table too large");
    offsets_[static_cast<std::size_t>(t)] = static_cast<std::size_t>(total);
    level = saturating_mul(level, step);
  }
}

std::size_t HistoryIndexer::index(HistoryView history) const {
  const std::size_t t = history.contexts.size();
  if (t < 1 || t > static_cast<std::size_t>(horizon_) || history.labels.size() + 1 != t) {
    throw ValidationError("history depth outside the expert table");
  }
  std::size_t code = 0;
  for (std::size_t s = 0; s + 1 < t; ++s) {
    const int x = history.contexts[s];
    const int y = history.labels[s];
    if (x < 0 || x >= contexts_ || y < 0 || y >= labels_) {
      throw ValidationError("history symbol out of alphabet");
    }
    code = code * static_cast<std::size_t>(contexts_ * labels_) +
           static_cast<std::size_t>(x * labels_ + y);
  }
  const int x = history.contexts[t - 1];
  if (x < 0 || x >= contexts_) throw ValidationError("history context out of alphabet");
  code = code * static_cast<std::size_t>(contexts_) + static_cast<std::size_t>(x);
  return offsets_[t - 1] + code;
}

void HistoryIndexer::decode(std::size_t index, std::vector<int>& contexts,
                            std::vector<int>& labels) const {
  if (index >= size()) throw ValidationError("history index out of range");
  std::size_t t = 1;
  while (offsets_[t] <= index) ++t;
  std::size_t code = index - offsets_[t - 1];
  contexts.assign(t, 0);
  labels.assign(t - 1, 0);
  contexts[t - 1] = static_cast<int>(code % static_cast<std::size_t>(contexts_));
  code /= static_cast<std::size_t>(contexts_);
  for (std::size_t s = t - 1; s-- > 0;) {
    const std::size_t pair = code % static_cast<std::size_t>(contexts_ * labels_);
    code /= static_cast<std::size_t>(contexts_ * labels_);
    contexts[s] = static_cast<int>(pair / static_cast<std::size_t>(labels_));
    labels[s] = static_cast<int>(pair % static_cast<std::size_t>(labels_));
  }
}

std::size_t path_code(std::span<const int> path, int labels) {
  std::size_t code = 0;
  for (int y : path) code = code * static_cast<std::size_t>(labels) + static_cast<std::size_t>(y);
  return code;
}

void decode_path(std::size_t code, int labels, std::span<int> path) {
  for (std::size_t i = path.size(); i-- > 0;) {
    path[i] = static_cast<int>(code % static_cast<std::size_t>(labels));
    code /= static_cast<std::size_t>(labels);
  }
}

std::size_t path_count(int labels, int length) {
  const std::uint64_t n = saturating_pow(static_cast<std::uint64_t>(labels), length);
  if (n > (std::uint64_t{1} << 48)) throw ValidationError("path space too large");
  return static_cast<std::size_t>(n);
}

// ---------------------------------------------------------------------------
// ContextTree

std::size_t ContextTree::node_count(int labels, int depth) {
  std::size_t total = 0;
  for (int t = 0; t < depth; ++t) total += path_count(labels, t);
  return total;
}

std::size_t ContextTree::level_offset(int labels, int t) { return node_count(labels, t); }

ContextTree::ContextTree(int labels, int depth, std::vector<int> nodes)
    : labels_(labels), depth_(depth), nodes_(std::move(nodes)) {
  if (labels < 1 || depth < 0) throw ValidationError("context tree needs labels >= 1, depth >= 0");
  if (nodes_.size() != node_count(labels, depth)) {
    std::ostringstream os;
    os << "context tree of depth " << depth << " over " << labels << " labels needs "
       << node_count(labels, depth) << " nodes, got " << nodes_.size();
    throw ValidationError(os.str());
  }
  for (int x : nodes_) {
    if (x < 0) throw ValidationError("context tree node holds a negative context");
  }
}

ContextTree ContextTree::constant(int labels, std::span<const int> sequence) {
  const int depth = static_cast<int>(sequence.size());
  std::vector<int> nodes;
  nodes.reserve(node_count(labels, depth));
  for (int t = 0; t < depth; ++t) {
    nodes.insert(nodes.end(), path_count(labels, t), sequence[static_cast<std::size_t>(t)]);
  }
  return ContextTree(labels, depth, std::move(nodes));
}

int ContextTree::max_context() const {
  int best = -1;
  for (int x : nodes_) best = x > best ? x : best;
  return best;
}

std::size_t ContextTree::node_index(std::span<const int> label_prefix) const {
  const int t = static_cast<int>(label_prefix.size());
  if (t >= depth_) throw ValidationError("label prefix reaches past the tree's last level");
  for (int y : label_prefix) {
    if (y < 0 || y >= labels_) throw ValidationError("tree path label out of alphabet");
  }
  return level_offset(labels_, t) + path_code(label_prefix, labels_);
}

int ContextTree::context_at(std::span<const int> label_prefix) const {
  return nodes_[node_index(label_prefix)];
}

std::vector<int> ContextTree::contexts_along(std::span<const int> path) const {
  if (path.size() > static_cast<std::size_t>(depth_)) {
    throw ValidationError("path longer than the context tree");
  }
  std::vector<int> out(path.size());
  std::size_t offset = 0;
  std::size_t level_size = 1;
  std::size_t code = 0;
  for (std::size_t t = 0; t < path.size(); ++t) {
    out[t] = nodes_[offset + code];
    offset += level_size;
    level_size *= static_cast<std::size_t>(labels_);
    const int y = path[t];
    if (y < 0 || y >= labels_) throw ValidationError("tree path label out of alphabet");
    code = code * static_cast<std::size_t>(labels_) + static_cast<std::size_t>(y);
  }
  return out;
}

}  // namespace shlab
