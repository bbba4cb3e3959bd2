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

#include "dcert/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dcert {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void format_fail(const std::string& what) { throw FormatError(what); }

double number_from(const ordered_json& j, const char* context) {
    if (!j.is_number()) format_fail(std::string(context) + ": expected a number");
    return j.get<double>();
}

Complex complex_from(const ordered_json& j, const char* context) {
    if (!j.is_array() || j.size() != 2) {
        format_fail(std::string(context) + ": expected a [re, im] pair");
    }
    return {number_from(j[0], context), number_from(j[1], context)};
}

} // namespace

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string ensemble_to_string(const StateEnsemble& ens) {
    std::ostringstream out;
    out << "{\n  \"dim\": " << ens.dim() << ",\n  \"states\": [\n";
    for (int x = 0; x < ens.size(); ++x) {
        const State& st = ens.state(x);
        out << "    ";
        if (st.is_pure()) {
            const CVec& v = st.pure_state();
            out << "[";
            for (int i = 0; i < v.dim(); ++i) {
                if (i > 0) out << ", ";
                out << "[" << format_real(v[i].real()) << ", " << format_real(v[i].imag()) << "]";
            }
            out << "]";
        } else {
            const CMat& rho = st.density();
            out << "{\"rho\": [";
            for (int i = 0; i < rho.dim(); ++i) {
                if (i > 0) out << ", ";
                out << "[";
                for (int j = 0; j < rho.dim(); ++j) {
                    if (j > 0) out << ", ";
                    out << "[" << format_real(rho.at(i, j).real()) << ", "
                        << format_real(rho.at(i, j).imag()) << "]";
                }
                out << "]";
            }
            out << "]}";
        }
        out << (x + 1 < ens.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

StateEnsemble parse_ensemble(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        format_fail(std::string("ensemble document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("states")) {
        format_fail("ensemble document: expected an object with \"dim\" and \"states\"");
    }
    if (!doc["dim"].is_number_integer()) format_fail("ensemble document: \"dim\" must be an integer");
    const int dim = doc["dim"].get<int>();
    if (!doc["states"].is_array()) format_fail("ensemble document: \"states\" must be an array");

    std::vector<State> states;
    for (const auto& entry : doc["states"]) {
        if (entry.is_array()) {
            if (static_cast<int>(entry.size()) != dim) {
                format_fail("ensemble document: pure state has wrong length");
            }
            CVec v(dim);
            for (int i = 0; i < dim; ++i) v[i] = complex_from(entry[static_cast<std::size_t>(i)], "pure state");
            states.push_back(State::pure(std::move(v)));
        } else if (entry.is_object() && entry.contains("rho")) {
            const auto& rows = entry["rho"];
            if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
                format_fail("ensemble document: \"rho\" has wrong row count");
            }
            CMat rho(dim);
            for (int i = 0; i < dim; ++i) {
                const auto& row = rows[static_cast<std::size_t>(i)];
                if (!row.is_array() || static_cast<int>(row.size()) != dim) {
                    format_fail("ensemble document: \"rho\" has wrong column count");
                }
                for (int j = 0; j < dim; ++j) {
                    rho.at(i, j) = complex_from(row[static_cast<std::size_t>(j)], "density matrix");
                }
            }
            states.push_back(State::mixed(std::move(rho)));
        } else {
            format_fail("ensemble document: state entries must be arrays or {\"rho\": ...} objects");
        }
    }
    try {
        return StateEnsemble(dim, std::move(states));
    } catch (const PreconditionError& e) {
        format_fail(std::string("ensemble document: ") + e.what());
    }
}

void write_ensemble(const std::string& path, const StateEnsemble& ens) {
    atomic_write(path, ensemble_to_string(ens));
}

StateEnsemble read_ensemble(const std::string& path) { return parse_ensemble(read_file(path)); }

namespace {

const char* outcome_label(Outcome b) {
    switch (b) {
        case Outcome::first: return "1";
        case Outcome::second: return "2";
        default: return "perp";
    }
}

Outcome outcome_from_label(const std::string& label) {
    if (label == "1") return Outcome::first;
    if (label == "2") return Outcome::second;
    if (label == "perp") return Outcome::inconclusive;
    format_fail("behavior table: unknown outcome label '" + label + "'");
}

} // namespace

std::string behavior_to_string(const BehaviorTable& table) {
    std::ostringstream out;
    out << "# dim " << table.dim() << "\n";
    out << "x y1 y2 b p\n";
    const int n = table.n_states();
    for (int x = 0; x < n; ++x) {
        for (const auto& [y1, y2] : state_pairs(n)) {
            for (Outcome b : kOutcomes) {
                out << (x + 1) << " " << (y1 + 1) << " " << (y2 + 1) << " " << outcome_label(b)
                    << " " << format_real(table.prob(x, y1, y2, b)) << "\n";
            }
        }
    }
    return out.str();
}

BehaviorTable parse_behavior(const std::string& text, int fallback_dim) {
    std::istringstream in(text);
    std::string line;
    int dim = fallback_dim;
    bool header_seen = false;

    struct Row {
        int x, y1, y2;
        Outcome b;
        double p;
    };
    std::vector<Row> rows;
    int n = 0;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            if (ls >> key && key == "dim") {
                if (!(ls >> dim)) format_fail("behavior table: malformed '# dim' line");
            }
            continue;
        }
        if (!header_seen) {
            std::istringstream ls(line);
            std::string c1, c2, c3, c4, c5, extra;
            if (!(ls >> c1 >> c2 >> c3 >> c4 >> c5) || (ls >> extra) || c1 != "x" || c2 != "y1" ||
                c3 != "y2" || c4 != "b" || c5 != "p") {
                format_fail("behavior table: first row must be the header 'x y1 y2 b p'");
            }
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        Row row{};
        std::string label;
        if (!(ls >> row.x >> row.y1 >> row.y2 >> label >> row.p)) {
            format_fail("behavior table: malformed row '" + line + "'");
        }
        row.b = outcome_from_label(label);
        if (row.x < 1 || row.y1 < 1 || row.y2 <= row.y1) {
            format_fail("behavior table: labels must be 1-based with y1 < y2");
        }
        row.x -= 1;
        row.y1 -= 1;
        row.y2 -= 1;
        n = std::max({n, row.x + 1, row.y2 + 1});
        rows.push_back(row);
    }
    if (!header_seen) format_fail("behavior table: missing header row");
    if (dim <= 0) format_fail("behavior table: dimension not specified ('# dim' line or override)");
    if (n < 2) format_fail("behavior table: needs at least two preparations");

    BehaviorTable table(n, dim);
    std::vector<int> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(pair_count(n)) * 3,
                         0);
    for (const Row& row : rows) {
        if (row.p < -1e-12 || row.p > 1.0 + 1e-12) {
            format_fail("behavior table: probability outside [0, 1]");
        }
        table.set_prob(row.x, row.y1, row.y2, row.b, row.p);
        const int pair_index = row.y1 * (2 * n - row.y1 - 1) / 2 + (row.y2 - row.y1 - 1);
        const std::size_t slot = (static_cast<std::size_t>(pair_index) * n + row.x) * 3 +
                                 static_cast<std::size_t>(row.b);
        if (++seen[slot] > 1) format_fail("behavior table: duplicate row");
    }
    for (int count : seen) {
        if (count != 1) format_fail("behavior table: incomplete table");
    }
    try {
        table.validate();
    } catch (const PreconditionError& e) {
        format_fail(std::string("behavior table: ") + e.what());
    }
    return table;
}

void write_behavior(const std::string& path, const BehaviorTable& table) {
    atomic_write(path, behavior_to_string(table));
}

BehaviorTable read_behavior(const std::string& path, int fallback_dim) {
    return parse_behavior(read_file(path), fallback_dim);
}

std::string report_to_json(const std::string& command, const RunConfig& config,
                           const CertificationReport& report) {
    ordered_json doc;
    doc["command"] = command;
    ordered_json cfg = ordered_json::object();
    for (const auto& [key, value] : config) cfg[key] = value;
    doc["config"] = cfg;

    ordered_json rep;
    rep["n_states"] = report.n_states;
    rep["d_assumed"] = report.d_assumed;
    rep["order"] = report.order;
    rep["epsilon_used"] = report.epsilon_used;
    rep["score"] = report.score;
    rep["bound"] = report.bound;
    rep["gap"] = report.gap;
    rep["design_certified"] = report.design_certified;
    rep["frame_potential_upper"] = report.frame_potential_upper;
    if (report.eta_lower) rep["eta_lower"] = *report.eta_lower;
    if (report.min_dimension) rep["min_dimension"] = *report.min_dimension;
    rep["notes"] = report.notes;
    doc["report"] = rep;
    return doc.dump(2) + "\n";
}

std::vector<std::array<double, 3>> read_bloch_vertices(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::array<double, 3>> vertices;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::array<double, 3> v{};
        if (!(ls >> v[0] >> v[1] >> v[2])) {
            format_fail("bloch vertices: malformed line '" + line + "'");
        }
        vertices.push_back(v);
    }
    if (vertices.empty()) format_fail("bloch vertices: no vertices found");
    return vertices;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush()) throw Error("failed writing '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw Error("cannot move '" + tmp + "' into place at '" + path + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace dcert
