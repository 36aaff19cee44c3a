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

#ifndef SHLAB_IO_REPORT_H_
#define SHLAB_IO_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shlab/cnml/play.h"
#include "shlab/covers/bounds.h"
#include "shlab/covers/covers.h"
#include "shlab/game/game.h"
#include "shlab/io/class_spec.h"
#include "shlab/linlab/linlab.h"
#include "shlab/shtarkov/sums.h"
#include "shlab/truncation/truncation.h"

namespace shlab::io {

std::string version_string();

// JSON has no infinities: +inf, -inf and NaN are written as the strings
// "inf", "-inf" and "nan". number_from_json reverses the mapping.
Json number(double v);
double number_from_json(const Json& j);
Json numbers(std::span<const double> values);
Json ints(std::span<const int> values);

// Two-space indented dump with a trailing newline. parse_json_text followed
// by serialize reproduces the input byte for byte.
std::string serialize(const Json& document);

// {value_log, value_linear}.
Json log_value_json(LogValue v);

Json to_json(const DualGameResult& r);
Json to_json(const GameValueReport& r);
Json to_json(const Transcript& t);
Json to_json(const WorstRegretResult& r);
Json to_json(const McEstimate& e);
Json to_json(const EntropyResult& r);
Json to_json(const GlobalCoverResult& r);
Json to_json(const FatResult& r);
Json to_json(const BoundReport& r);
Json to_json(const TruncationReport& r);
Json to_json(const LinLowerBoundReport& r);
Json to_json(const RealTree& t);

// Aligned text rendering. Bound reports and verify matrices get their own
// columns; anything else is flattened into path/value rows.
std::string render_table(const Json& report);

}  // namespace shlab::io

#endif  // SHLAB_IO_REPORT_H_
