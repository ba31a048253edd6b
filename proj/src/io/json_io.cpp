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

#include <charconv>
#include <fstream>
#include <sstream>

#include "scot/errors.hpp"
#include "scot/io.hpp"

namespace scot::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json payload_value(const proto::Value& v) {
    return std::visit(overloaded{[](int x) { return json(x); },
                                 [](const proto::Bits& b) { return json(b); },
                                 [](const dqacm::Strings& s) { return json(s); },
                                 [](const proto::QuantumHandle& h) {
                                     return json{{"quantum_handle", h.id}};
                                 }},
                      v);
}

json placements_json(const std::vector<proto::Placement>& ps) {
    json out = json::array();
    for (const auto& p : ps) {
        const char* target = p.target == proto::Placement::Target::Emit      ? "emit"
                             : p.target == proto::Placement::Target::Deliver ? "deliver"
                                                                             : "at";
        json item{{"kind", proto::to_string(p.kind)}, {"target", target}};
        if (p.kind != proto::Placement::Kind::InG) {
            item["index"] = p.index;
        }
        out.push_back(item);
    }
    return out;
}

} // namespace

geo::Event event_from_json(const json& j) {
    if (!j.is_array() || j.size() < 2) {
        throw InputError("event must be an array [t, x_1, ...] with at least one spatial coordinate");
    }
    geo::Event e;
    try {
        e.t = j.at(0).get<double>();
        for (std::size_t k = 1; k < j.size(); ++k) {
            e.x.push_back(j.at(k).get<double>());
        }
    } catch (const json::exception& ex) {
        throw InputError(std::string("event coordinates must be numbers: ") + ex.what());
    }
    return e;
}

json to_json(const geo::Event& e) {
    json out = json::array({e.t});
    for (double v : e.x) {
        out.push_back(v);
    }
    return out;
}

geo::Layout layout_from_json(const json& j) {
    if (!j.is_object()) {
        throw InputError("layout document must be a JSON object");
    }
    geo::Layout lay;
    try {
        lay.dim = j.value("dim", 1);
        for (const auto& r : j.at("regions")) {
            std::vector<geo::Event> interior;
            if (r.contains("interior")) {
                for (const auto& e : r.at("interior")) {
                    interior.push_back(event_from_json(e));
                }
            }
            if (r.contains("lo")) {
                const geo::Box box{event_from_json(r.at("lo")), event_from_json(r.at("hi"))};
                lay.regions.push_back(geo::Region::from_box(box, std::move(interior)));
            } else {
                if (interior.empty()) {
                    throw InputError("region needs lo/hi or interior events");
                }
                lay.regions.emplace_back(std::move(interior));
            }
        }
        for (const auto& q : j.at("q_points")) {
            lay.q_points.push_back(event_from_json(q));
        }
        for (const auto& [agent, verts] : j.at("worldlines").items()) {
            std::vector<geo::Event> vs;
            for (const auto& v : verts) {
                vs.push_back(event_from_json(v));
            }
            lay.worldlines.emplace(agent, geo::Worldline(std::move(vs)));
        }
        if (j.contains("aliases")) {
            for (const auto& [agent, target] : j.at("aliases").items()) {
                lay.aliases.emplace(agent, target.get<std::string>());
            }
        }
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed layout: ") + ex.what());
    }
    return lay;
}

json to_json(const geo::Layout& layout) {
    json regions = json::array();
    for (const auto& r : layout.regions) {
        json item;
        if (r.box()) {
            item["lo"] = to_json(r.box()->lo);
            item["hi"] = to_json(r.box()->hi);
        } else {
            json ev = json::array();
            for (const auto& e : r.events()) {
                ev.push_back(to_json(e));
            }
            item["interior"] = ev;
        }
        regions.push_back(item);
    }
    json q = json::array();
    for (const auto& e : layout.q_points) {
        q.push_back(to_json(e));
    }
    json wl = json::object();
    for (const auto& [agent, w] : layout.worldlines) {
        json vs = json::array();
        for (const auto& v : w.vertices()) {
            vs.push_back(to_json(v));
        }
        wl[agent] = vs;
    }
    json out{{"dim", layout.dim}, {"regions", regions}, {"q_points", q}, {"worldlines", wl}};
    if (!layout.aliases.empty()) {
        out["aliases"] = layout.aliases;
    }
    return out;
}

std::pair<geo::Layout, double> load_layout(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open layout file " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw InputError("layout file " + path.string() + " is not valid JSON: " + ex.what());
    }
    const double eps = j.is_object() ? j.value("eps", 0.0) : 0.0;
    return {layout_from_json(j), eps};
}

json to_json(const std::vector<geo::Violation>& violations) {
    json out = json::array();
    for (const auto& v : violations) {
        out.push_back({{"kind", v.kind}, {"message", v.message}, {"indices", v.indices}});
    }
    return out;
}

json to_json(const proto::Transcript& t) {
    json msgs = json::array();
    for (const auto& msg : t.messages) {
        json pay = json::object();
        for (const auto& p : msg.payload) {
            pay[p.label] = payload_value(p.value);
        }
        msgs.push_back({{"seq", msg.seq},
                        {"step", msg.step},
                        {"sender", msg.sender},
                        {"receiver", msg.receiver},
                        {"emit", to_json(msg.emit)},
                        {"deliver", to_json(msg.deliver)},
                        {"payload", pay},
                        {"placements", placements_json(msg.placements)}});
    }
    json ops = json::array();
    for (const auto& op : t.local_ops) {
        ops.push_back({{"step", op.step},
                       {"agent", op.agent},
                       {"at", to_json(op.at)},
                       {"description", op.description},
                       {"placements", placements_json(op.placements)}});
    }
    json outputs = json::object();
    for (const auto& [i, b] : t.outputs) {
        outputs[std::to_string(i)] = b;
    }
    json out{{"mode", proto::to_string(t.mode)},
             {"m", t.m},
             {"n", t.n},
             {"b", t.b},
             {"x", t.x},
             {"r", t.r},
             {"messages", msgs},
             {"local_ops", ops},
             {"outputs", outputs}};
    if (t.b_prime) {
        out["b_prime"] = *t.b_prime;
    }
    if (t.c) {
        out["c"] = *t.c;
    }
    if (!t.bases.empty()) {
        out["bases"] = t.bases;
    }
    if (!t.s.empty()) {
        out["s"] = t.s;
    }
    if (!t.t.empty()) {
        out["t"] = t.t;
    }
    if (!t.r_prime.empty()) {
        out["r_prime"] = t.r_prime;
    }
    if (!t.decoded.empty()) {
        json dec = json::object();
        for (const auto& [i, b] : t.decoded) {
            dec[std::to_string(i)] = b;
        }
        out["decoded"] = dec;
    }
    return out;
}

json to_json(const proto::TranscriptCheck& check) {
    json v = json::array();
    for (const auto& x : check.violations) {
        v.push_back({{"kind", x.kind}, {"message", x.message}});
    }
    return {{"ok", check.ok}, {"violations", v}};
}

json to_json(const bounds::BoundReport& r) {
    return {{"m", r.m},
            {"n", r.n},
            {"lambda", r.lambda},
            {"gamma", r.gamma},
            {"epsilon", r.epsilon_exact},
            {"epsilon_gamma", r.epsilon_gamma},
            {"gamma_threshold", r.gamma_threshold}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) {
            out += ',';
        }
        out += csv_field(fields[k]);
    }
    return out + "\r\n";
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    out << csv_line(header);
    for (const auto& r : rows) {
        out << csv_line(r);
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
}

std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string bits(const std::vector<int>& b) {
    std::string s;
    for (int v : b) {
        s += std::to_string(v);
    }
    return s;
}

} // namespace scot::io
