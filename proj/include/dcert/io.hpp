// Copyright 2026 The design-certify Authors
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
 * @file
 * File formats. Ensembles serialize as JSON documents
 *
 *   {"dim": d, "states": [[[re, im], ...], {"rho": [[[re, im], ...], ...]}, ...]}
 *
 * with pure states as arrays of [re, im] pairs and mixed states as objects
 * carrying a "rho" matrix. Behavior tables serialize as whitespace tabular
 * text with a mandatory header row "x y1 y2 b p", 1-based labels, outcomes
 * written 1/2/perp, preceded by a "# dim <d>" line. All reals are emitted
 * with 17 significant digits, so write -> read -> write round-trips byte
 * for byte. Writes go through a temporary file and a rename.
 */

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dcert/certify.hpp"
#include "dcert/designs.hpp"
#include "dcert/usd.hpp"

namespace dcert {

/// A real number rendered with 17 significant digits (scientific form).
std::string format_real(double x);

std::string ensemble_to_string(const StateEnsemble& ens);
StateEnsemble parse_ensemble(const std::string& text);
void write_ensemble(const std::string& path, const StateEnsemble& ens);
StateEnsemble read_ensemble(const std::string& path);

std::string behavior_to_string(const BehaviorTable& table);
/// `fallback_dim` supplies the dimension when the document lacks a
/// "# dim" line; pass 0 to require the line.
BehaviorTable parse_behavior(const std::string& text, int fallback_dim = 0);
void write_behavior(const std::string& path, const BehaviorTable& table);
BehaviorTable read_behavior(const std::string& path, int fallback_dim = 0);

/// Ordered key/value pairs recording the fully resolved run configuration;
/// embedded verbatim in every report for reproducibility.
using RunConfig = std::vector<std::pair<std::string, std::string>>;

/// The report as a JSON document: the command, the resolved configuration,
/// and whichever result fields the run produced.
std::string report_to_json(const std::string& command, const RunConfig& config,
                           const CertificationReport& report);

/// Bloch vertices for the "bloch:<path>" constructor: one vertex per line,
/// three whitespace-separated coordinates, '#' comments allowed.
std::vector<std::array<double, 3>> read_bloch_vertices(const std::string& path);

/// Writes content to path via a sibling temporary file and an atomic rename.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace dcert
