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


#include "shlab/shtarkov/constraint.h"

#include <sstream>

#include "shlab/core/errors.h"

namespace shlab {

std::uint64_t full_context_mask(int num_contexts) {
  if (num_contexts < 1 || num_contexts > 64) {
    throw ValidationError("context-set computations support 1..64 contexts");
  }
  return num_contexts == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_contexts) - 1;
}

namespace {

std::uint64_t mask_of(const std::vector<int>& set) {
  std::uint64_t m = 0;
  for (int x : set) {
    if (x < 0 || x >= 64) throw ValidationError("admissible context out of range");
    m |= std::uint64_t{1} << x;
  }
  return m;
}

}  // namespace

ContextConstraint::ContextConstraint(std::vector<std::vector<int>> per_round)
    : per_round_(std::move(per_round)) {
  for (std::size_t t = 0; t < per_round_.size(); ++t) {
    if (per_round_[t].empty()) {
      throw ValidationError("admissible set for round " + std::to_string(t + 1) + " is empty");
    }
    mask_of(per_round_[t]);
  }
}

void ContextConstraint::add_override(std::vector<int> contexts, std::vector<int> labels,
                                     std::vector<int> allowed) {
  if (contexts.size() != labels.size()) {
    throw ValidationError("constraint override needs a complete history");
  }
  if (allowed.empty()) throw ValidationError("constraint override admits no context");
  mask_of(allowed);
  overrides_[{std::move(contexts), std::move(labels)}] = std::move(allowed);
}

std::vector<ContextConstraint::Override> ContextConstraint::overrides() const {
  std::vector<Override> out;
  for (const auto& [k, v] : overrides_) out.push_back({k.first, k.second, v});
  return out;
}

std::uint64_t ContextConstraint::allowed(std::span<const int> contexts,
                                         std::span<const int> labels, int num_contexts) const {
  const std::uint64_t full = full_context_mask(num_contexts);
  std::uint64_t m = full;
  if (!overrides_.empty()) {
    auto it = overrides_.find({std::vector<int>(contexts.begin(), contexts.end()),
                               std::vector<int>(labels.begin(), labels.end())});
    if (it != overrides_.end()) {
      m = mask_of(it->second);
    } else if (contexts.size() < per_round_.size()) {
      m = mask_of(per_round_[contexts.size()]);
    }
  } else if (contexts.size() < per_round_.size()) {
    m = mask_of(per_round_[contexts.size()]);
  }
  m &= full;
  if (m == 0) {
    std::ostringstream os;
    os << "no admissible context at round " << contexts.size() + 1;
    throw ValidationError(os.str());
  }
  return m;
}

namespace {

bool admits_dfs(const ContextConstraint& c, const ContextTree& tree, std::vector<int>& ctx,
                std::vector<int>& lab, std::vector<int>& path, int num_contexts) {
  if (path.size() == static_cast<std::size_t>(tree.depth())) return true;
  const int x = tree.context_at(path);
  if (x >= num_contexts || !((c.allowed(ctx, lab, num_contexts) >> x) & 1U)) return false;
  ctx.push_back(x);
  bool ok = true;
  for (int y = 0; y < tree.labels() && ok; ++y) {
    lab.push_back(y);
    path.push_back(y);
    ok = admits_dfs(c, tree, ctx, lab, path, num_contexts);
    path.pop_back();
    lab.pop_back();
  }
  ctx.pop_back();
  return ok;
}

}  // namespace

bool ContextConstraint::admits(const ContextTree& tree, const Prefix& prefix,
                               int num_contexts) const {
  if (!prefix.complete()) throw ValidationError("constraint check needs a complete prefix");
  std::vector<int> ctx = prefix.contexts();
  std::vector<int> lab = prefix.labels();
  std::vector<int> path;
  return admits_dfs(*this, tree, ctx, lab, path, num_contexts);
}

}  // namespace shlab
