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

#ifndef SHLAB_CORE_HISTORY_H_
#define SHLAB_CORE_HISTORY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace shlab {

// The information an expert sees at round t: contexts x_1..x_t and labels
// y_1..y_{t-1}.
struct HistoryView {
  std::span<const int> contexts;
  std::span<const int> labels;

  std::size_t round() const { return contexts.size(); }
};

// A realized history. Label length equals the context length (a completed
// round) or is one shorter (the current context has been revealed but not its
// label).
class Prefix {
 public:
  Prefix() = default;
  Prefix(std::vector<int> contexts, std::vector<int> labels);

  const std::vector<int>& contexts() const { return contexts_; }
  const std::vector<int>& labels() const { return labels_; }
  std::size_t length() const { return contexts_.size(); }
  bool complete() const { return contexts_.size() == labels_.size(); }

  // Throws ValidationError when a symbol lies outside the alphabets.
  void validate(int labels, int contexts) const;

  friend bool operator==(const Prefix&, const Prefix&) = default;

 private:
  std::vector<int> contexts_;
  std::vector<int> labels_;
};

// Bijection between expert histories of depth <= horizon and a dense index.
// A depth-t history (x_1, y_1, ..., x_{t-1}, y_{t-1}, x_t) is coded in mixed
// radix with the earliest symbol most significant; depth-t histories follow
// all shallower ones.
class HistoryIndexer {
 public:
  HistoryIndexer(int labels, int contexts, int horizon);

  int labels() const { return labels_; }
  int contexts() const { return contexts_; }
  int horizon() const { return horizon_; }
  std::size_t size() const { return offsets_.back(); }

  // Requires 1 <= round <= horizon and in-range symbols.
  std::size_t index(HistoryView history) const;

  // Inverse of index().
  void decode(std::size_t index, std::vector<int>& contexts, std::vector<int>& labels) const;

 private:
  int labels_;
  int contexts_;
  int horizon_;
  std::vector<std::size_t> offsets_;  // offsets_[t-1] = first index of depth t
};

// Mixed-radix (base `labels`, earliest symbol most significant) code of a
// label path.
std::size_t path_code(std::span<const int> path, int labels);

// Inverse of path_code for a path of the given length.
void decode_path(std::size_t code, int labels, std::span<int> path);

// labels^length as size_t; throws ValidationError on overflow.
std::size_t path_count(int labels, int length);

}  // namespace shlab

#endif  // SHLAB_CORE_HISTORY_H_
