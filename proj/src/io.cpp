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

#include "qkdrates/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qkdrates/errors.hpp"
#include "qkdrates/version.hpp"

namespace qkdrates {

namespace {

using nlohmann::json;

Axis axis_from_string(const std::string& s) {
    if (s == "z") return kAxisZ;
    if (s == "x") return kAxisX;
    if (s == "y") return kAxisY;
    throw ParseError("axis must be one of \"z\", \"x\", \"y\"; got \"" + s + "\"");
}

double number_at(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ParseError("expected a number at key \"" + key + "\"");
    }
    return j.at(key).get<double>();
}

Mat3 parse_matrix3(const json& j) {
    Mat3 m;
    // Accept both nested rows and a flat row-major 9-array.
    if (j.is_array() && j.size() == 3 && j.at(0).is_array()) {
        for (int r = 0; r < 3; ++r) {
            const json& row = j.at(r);
            if (!row.is_array() || row.size() != 3) throw ParseError("\"R\" rows must have 3 entries");
            for (int c = 0; c < 3; ++c) {
                if (!row.at(c).is_number()) throw ParseError("\"R\" entries must be numbers");
                m(r, c) = row.at(c).get<double>();
            }
        }
        return m;
    }
    if (j.is_array() && j.size() == 9) {
        for (int i = 0; i < 9; ++i) {
            if (!j.at(i).is_number()) throw ParseError("\"R\" entries must be numbers");
            m(i / 3, i % 3) = j.at(i).get<double>();
        }
        return m;
    }
    throw ParseError("\"R\" must be a 3x3 array (nested rows or flat row-major)");
}

Vec3 parse_vector3(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ParseError("\"t\" must be a 3-array");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!j.at(i).is_number()) throw ParseError("\"t\" entries must be numbers");
        v[i] = j.at(i).get<double>();
    }
    return v;
}

std::array<double, 3> parse_euler(const json& params, const std::string& key) {
    if (!params.contains(key)) return {0, 0, 0};
    const json& j = params.at(key);
    if (!j.is_array() || j.size() != 3) throw ParseError("\"" + key + "\" must be a 3-array");
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) {
        if (!j.at(i).is_number()) throw ParseError("\"" + key + "\" entries must be numbers");
        out[i] = j.at(i).get<double>();
    }
    return out;
}

QubitChannel make_family(const std::string& name, const json& params) {
    if (name == "identity") return family_identity();
    if (name == "depolarizing") return family_depolarizing(number_at(params, "qber"));
    if (name == "phase_flip") return family_phase_flip(number_at(params, "p"));
    if (name == "bit_flip") return family_bit_flip(number_at(params, "p"));
    if (name == "rotated_pauli") {
        if (!params.contains("q") || !params.at("q").is_array() || params.at("q").size() != 4) {
            throw ParseError("rotated_pauli requires \"q\" as a 4-array");
        }
        std::array<double, 4> q{};
        for (int i = 0; i < 4; ++i) {
            if (!params.at("q").at(i).is_number()) throw ParseError("\"q\" entries must be numbers");
            q[i] = params.at("q").at(i).get<double>();
        }
        return family_rotated_pauli(q, parse_euler(params, "euler_a"), parse_euler(params, "euler_b"));
    }
    if (name == "random_unital") {
        if (!params.contains("seed") || !params.at("seed").is_number_integer()) {
            throw ParseError("random_unital requires an integer \"seed\"");
        }
        return random_unital(params.at("seed").get<uint64_t>());
    }
    throw ParseError("unknown family \"" + name + "\"");
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    out += "\"";
    return out;
}

std::string matrix_json(const Mat3& m) {
    std::string out = "[";
    for (int r = 0; r < 3; ++r) {
        out += r ? ",[" : "[";
        for (int c = 0; c < 3; ++c) {
            if (c) out += ",";
            out += format_g17(m(r, c));
        }
        out += "]";
    }
    out += "]";
    return out;
}

std::string vector_json(const Vec3& v) {
    return "[" + format_g17(v[0]) + "," + format_g17(v[1]) + "," + format_g17(v[2]) + "]";
}

std::string rate_json(const RateValue& r) {
    return "{\"raw\":" + format_g17(r.raw) + ",\"clamped\":" + format_g17(r.clamped) + "}";
}

std::string plan_json(const CompensationPlan& p) {
    std::string out = "{";
    if (p.oa.has_value()) out += "\"oa\":" + matrix_json(*p.oa) + ",";
    out += "\"ob\":" + matrix_json(p.ob);
    out += ",\"restriction\":";
    out += p.restriction == Restriction::zx_plane ? "\"zx_plane\"" : "\"full\"";
    out += ",\"degenerate\":";
    out += p.degenerate ? "true" : "false";
    out += "}";
    return out;
}

const RateValue& column_value(const RateReport& rep, const std::string& name) {
    if (name == "f1") return rep.f1;
    if (name == "f2") return rep.f2;
    if (name == "f1_conv") return rep.f1_conv;
    if (name == "f2_conv") return rep.f2_conv;
    if (name == "g1") return rep.g1;
    if (name == "g2") return rep.g2;
    if (name == "g1_conv") return rep.g1_conv;
    if (name == "g2_conv") return rep.g2_conv;
    if (name == "j1") return rep.j1;
    if (name == "j2") return rep.j2;
    if (name == "j1_conv") return rep.j1_conv;
    if (name == "j2_conv") return rep.j2_conv;
    throw ParseError("unknown rate column \"" + name + "\"");
}

}  // namespace

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ChannelSpec parse_channel_spec_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("channel spec must be a JSON object");

    const int present = static_cast<int>(doc.contains("stokes")) +
                        static_cast<int>(doc.contains("biases")) +
                        static_cast<int>(doc.contains("family"));
    if (present != 1) {
        throw ParseError("channel spec needs exactly one of \"stokes\", \"biases\", \"family\"");
    }

    ChannelSpec out;
    if (doc.contains("stokes")) {
        const json& s = doc.at("stokes");
        if (!s.is_object() || !s.contains("R")) throw ParseError("\"stokes\" requires \"R\"");
        out.channel.r = parse_matrix3(s.at("R"));
        out.channel.t = s.contains("t") ? parse_vector3(s.at("t")) : Vec3::Zero();
        out.source = "stokes";
        return out;
    }
    if (doc.contains("biases")) {
        const json& b = doc.at("biases");
        if (!b.is_object() || !b.contains("pairs") || !b.at("pairs").is_array()) {
            throw ParseError("\"biases\" requires a \"pairs\" array");
        }
        BiasTable table;
        for (const json& pair : b.at("pairs")) {
            if (!pair.is_object() || !pair.contains("a") || !pair.contains("b")) {
                throw ParseError("each bias pair requires \"a\" and \"b\" axes");
            }
            if (!pair.at("a").is_string() || !pair.at("b").is_string()) {
                throw ParseError("bias axes must be strings");
            }
            table.set(axis_from_string(pair.at("a").get<std::string>()),
                      axis_from_string(pair.at("b").get<std::string>()),
                      number_at(pair, "q0"), number_at(pair, "q1"));
        }
        out.channel = stokes_from_biases(table);
        out.source = "biases";
        return out;
    }
    const json& f = doc.at("family");
    if (!f.is_object() || !f.contains("name") || !f.at("name").is_string()) {
        throw ParseError("\"family\" requires a string \"name\"");
    }
    const std::string name = f.at("name").get<std::string>();
    out.channel = make_family(name, f.contains("params") ? f.at("params") : json::object());
    out.source = "family:" + name;
    return out;
}

ChannelSpec load_channel_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open channel spec \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_channel_spec_text(buf.str());
}

const std::vector<std::string>& rate_column_names() {
    static const std::vector<std::string> names = {"f1", "f2", "f1_conv", "f2_conv",
                                                   "g1", "g2", "g1_conv", "g2_conv",
                                                   "j1", "j2", "j1_conv", "j2_conv"};
    return names;
}

std::vector<std::string> select_columns(const std::string& settings) {
    const auto& all = rate_column_names();
    if (settings.empty()) return all;
    std::vector<std::string> requested;
    std::string token;
    std::istringstream stream(settings);
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        if (std::find(all.begin(), all.end(), token) == all.end()) {
            throw ParseError("unknown setting \"" + token + "\"");
        }
        requested.push_back(token);
    }
    if (requested.empty()) throw ParseError("--settings selected no columns");
    // Canonical order regardless of how the request was spelled.
    std::vector<std::string> out;
    for (const std::string& name : all) {
        if (std::find(requested.begin(), requested.end(), name) != requested.end()) {
            out.push_back(name);
        }
    }
    return out;
}

std::string report_to_json(const ChannelSpec& spec, const RateReport& rep,
                           const ReportConfig& cfg) {
    std::string out = "{\n";
    out += "  \"tool\": {\"name\": \"qkdrates\", \"version\": " + quote(kVersion) + "},\n";
    out += "  \"config\": {\"unital_tol\": " + format_g17(cfg.unital_tol) +
           ", \"opt_grid\": " + std::to_string(cfg.search.coarse_grid) +
           ", \"refine_iters\": " + std::to_string(cfg.search.refine_iters) +
           ", \"tol\": " + format_g17(cfg.search.tol) +
           ", \"seed\": " + std::to_string(cfg.search.seed) + "},\n";
    out += "  \"input\": {\"source\": " + quote(spec.source) +
           ", \"stokes\": {\"R\": " + matrix_json(spec.channel.r) +
           ", \"t\": " + vector_json(spec.channel.t) + "}},\n";
    out += "  \"rates\": {";
    bool first = true;
    for (const std::string& name : rate_column_names()) {
        if (!first) out += ", ";
        first = false;
        out += quote(name) + ": " + rate_json(column_value(rep, name));
    }
    out += "},\n";
    out += "  \"plans\": {";
    out += "\"f1\": " + plan_json(rep.plan_f1) + ", \"f2\": " + plan_json(rep.plan_f2);
    out += ", \"g1\": " + plan_json(rep.plan_g1) + ", \"g2\": " + plan_json(rep.plan_g2);
    out += ", \"j1\": " + plan_json(rep.plan_j1) + ", \"j2\": " + plan_json(rep.plan_j2);
    out += "},\n";
    out += "  \"orthogonality\": {\"six_state\": ";
    out += rep.six_state_orthogonal ? "true" : "false";
    out += ", \"bb84_plane\": ";
    out += rep.bb84_plane_orthogonal ? "true" : "false";
    out += ", \"bb84_any\": ";
    out += rep.bb84_any_orthogonal ? "true" : "false";
    out += "},\n";
    out += "  \"diagnostics\": {\"six_state_inner\": [" + format_g17(rep.six_state_inner[0]) +
           "," + format_g17(rep.six_state_inner[1]) + "," + format_g17(rep.six_state_inner[2]) +
           "], \"bb84_plane_inner\": " + format_g17(rep.bb84_plane_inner) +
           ", \"bb84_any_inner\": " + format_g17(rep.bb84_any_inner) +
           ", \"s1_star\": " + format_g17(rep.s1_star) +
           ", \"s2_star\": " + format_g17(rep.s2_star) + "},\n";
    out += "  \"warnings\": [";
    for (size_t i = 0; i < rep.warnings.size(); ++i) {
        if (i) out += ", ";
        out += quote(rep.warnings[i]);
    }
    out += "]\n}\n";
    return out;
}

std::string report_to_csv(const RateReport& rep, const std::vector<std::string>& columns) {
    std::string header, row;
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) {
            header += ",";
            row += ",";
        }
        header += columns[i];
        row += format_g17(column_value(rep, columns[i]).raw);
    }
    return header + "\n" + row + "\n";
}

std::string sweep_header(const std::vector<std::string>& columns) {
    std::string out = "param";
    for (const std::string& name : columns) out += "," + name;
    return out + "\n";
}

std::string sweep_row(double param, const RateReport& rep,
                      const std::vector<std::string>& columns) {
    std::string out = format_g17(param);
    for (const std::string& name : columns) {
        out += "," + format_g17(column_value(rep, name).raw);
    }
    return out + "\n";
}

}  // namespace qkdrates
