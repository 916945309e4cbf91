// Copyright 2026 The qkdrates developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "qkdrates/channel.hpp"
#include "qkdrates/optimize.hpp"
#include "qkdrates/rates.hpp"

namespace qkdrates {

// A channel spec document resolves to a channel plus a provenance label
// ("stokes", "biases", or "family:<name>") echoed back in reports.
struct ChannelSpec {
    QubitChannel channel;
    std::string source;
};

// Parses the channel-spec JSON document: exactly one of
//   {"stokes": {"R": 3x3 row-major, "t": [tz, tx, ty]}}
//   {"biases": {"pairs": [{"a": "z|x|y", "b": "z|x|y", "q0": n, "q1": n}]}}
//   {"family": {"name": s, "params": {...}}}
// Schema violations raise ParseError; channel-level violations (bad bias
// values, incomplete tomography, out-of-range family parameters) raise the
// corresponding channel errors.
ChannelSpec parse_channel_spec_text(const std::string& text);
ChannelSpec load_channel_spec(const std::string& path);

struct ReportConfig {
    double unital_tol = kUnitalTol;
    SearchConfig search;
    std::string format = "json";  // "json" or "csv"
};

// Shortest representation that round-trips a double (17 significant digits).
std::string format_g17(double v);

// Canonical sweep/report column names, in emission order.
const std::vector<std::string>& rate_column_names();

// Validates a comma-separated --settings list and returns the selected
// columns in canonical order; empty input selects every column.
std::vector<std::string> select_columns(const std::string& settings);

// Deterministic serializations: fixed key order, fixed float formatting, so
// identical inputs produce byte-identical documents.
std::string report_to_json(const ChannelSpec& spec, const RateReport& report,
                           const ReportConfig& cfg);
std::string report_to_csv(const RateReport& report, const std::vector<std::string>& columns);
std::string sweep_header(const std::vector<std::string>& columns);
std::string sweep_row(double param, const RateReport& report,
                      const std::vector<std::string>& columns);

}  // namespace qkdrates
