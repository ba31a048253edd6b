// Copyright 2026 The scot-sim Authors
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

/**
 * JSON and CSV serialization for layouts, transcripts and reports.
 *
 * Events are arrays [t, x_1, ..., x_d]. A layout document looks like
 *
 *   {"dim": 1,
 *    "regions": [{"lo": [t, x], "hi": [t, x], "interior": [[t, x]]}],
 *    "q_points": [[t, x]],
 *    "worldlines": {"A": [[t, x], ...]},
 *    "aliases": {"A0": "A"},
 *    "eps": 0.0}
 */
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "scot/adversary.hpp"
#include "scot/bounds.hpp"
#include "scot/minkowski.hpp"
#include "scot/protocol.hpp"

namespace scot::io {

using json = nlohmann::json;

[[nodiscard]] geo::Event event_from_json(const json& j);
[[nodiscard]] json to_json(const geo::Event& e);

/// Throws InputError on malformed documents.
[[nodiscard]] geo::Layout layout_from_json(const json& j);
[[nodiscard]] json to_json(const geo::Layout& layout);
/// Reads and parses a layout file; returns the tolerance ("eps", default 0) too.
[[nodiscard]] std::pair<geo::Layout, double> load_layout(const std::filesystem::path& path);

[[nodiscard]] json to_json(const std::vector<geo::Violation>& violations);
[[nodiscard]] json to_json(const proto::Transcript& t);
[[nodiscard]] json to_json(const proto::TranscriptCheck& check);
[[nodiscard]] json to_json(const bounds::BoundReport& report);

/// RFC-4180 field quoting.
[[nodiscard]] std::string csv_field(const std::string& s);
[[nodiscard]] std::string csv_line(const std::vector<std::string>& fields);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_json(const std::filesystem::path& path, const json& j);

/// Shortest round-trip decimal representation.
[[nodiscard]] std::string num(double v);
[[nodiscard]] std::string bits(const std::vector<int>& b);

} // namespace scot::io
