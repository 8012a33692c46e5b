#include "episim/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "episim/errors.hpp"

namespace episim {

using nlohmann::json;

// --------------------------------------------------------------------------
// frame building

std::vector<FrameDefect> validate_frame_data(const FrameData& d, bool complete,
                                             GeneralizedEpistemicModel* out) {
    std::vector<FrameDefect> report;
    const int n = static_cast<int>(d.worlds.size());
    auto frame = GeneralizedEpistemicFrame::make(d.agents, d.worlds);

    if (!complete) {
        for (const auto& r : d.relations) {
            for (const auto& defect : relation_defects(r.pairs, n)) {
                FrameDefect fd;
                fd.kind = defect.kind == RelationDefect::Kind::Asymmetric
                              ? FrameDefect::Kind::Asymmetric
                              : FrameDefect::Kind::Intransitive;
                fd.g1 = r.group;
                fd.w1 = defect.x;
                fd.w2 = defect.y;
                fd.w3 = defect.z;
                report.push_back(fd);
            }
            frame.per(r.group) = Per::from_pairs(r.pairs, n);
        }
    } else {
        // generators convention: close each listed group, then push pairs
        // down the subset lattice
        std::vector<std::vector<std::pair<int, int>>> pairs(
            static_cast<std::size_t>(frame.group_count()));
        for (const auto& r : d.relations) pairs[r.group.bits] = r.pairs;
        std::vector<int> masks(static_cast<std::size_t>(frame.group_count()));
        for (int m = 0; m < frame.group_count(); ++m) masks[static_cast<std::size_t>(m)] = m;
        std::sort(masks.begin(), masks.end(), [](int a, int b) {
            return std::popcount(static_cast<unsigned>(a)) > std::popcount(static_cast<unsigned>(b));
        });
        for (int m : masks) {
            auto all = pairs[static_cast<std::size_t>(m)];
            for (int a = 0; a < frame.agent_count(); ++a) {
                if (m & (1 << a)) continue;
                const auto up = frame.rel[static_cast<std::size_t>(m | (1 << a))].pairs();
                all.insert(all.end(), up.begin(), up.end());
            }
            frame.rel[static_cast<std::size_t>(m)] = Per::from_pairs(all, n);
        }
    }

    auto frame_report = validate_frame(frame);
    report.insert(report.end(), frame_report.begin(), frame_report.end());
    if (report.empty() && out) {
        out->frame = std::move(frame);
        out->valuation = d.props;
        for (auto& v : out->valuation) std::sort(v.begin(), v.end());
    }
    return report;
}

GeneralizedEpistemicModel build_model(const FrameData& d, bool complete) {
    GeneralizedEpistemicModel m;
    auto report = validate_frame_data(d, complete, &m);
    if (!report.empty()) {
        GeneralizedEpistemicFrame shell = GeneralizedEpistemicFrame::make(d.agents, d.worlds);
        std::string msg = "invalid frame:";
        for (const auto& r : report) msg += "\n  " + describe(r, shell);
        throw ValidationError(msg);
    }
    return m;
}

// --------------------------------------------------------------------------
// json helpers

namespace {

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

std::vector<std::string> string_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError(std::string(what) + " must hold strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<std::string> load_roster(const json& j) {
    auto agents = string_list(j.at("agents"), "agents");
    if (static_cast<int>(agents.size()) > kMaxAgents)
        throw ValidationError("at most " + std::to_string(kMaxAgents) + " agents supported");
    for (const auto& a : agents) {
        if (!valid_agent_name(a)) throw ParseError("invalid agent name '" + a + "'");
        if (std::count(agents.begin(), agents.end(), a) > 1)
            throw ParseError("duplicate agent name '" + a + "'");
    }
    return agents;
}

AgentSet load_group(const json& j, const std::vector<std::string>& roster, const char* what) {
    AgentSet g;
    for (const auto& name : string_list(j, what)) {
        int idx = roster_index(roster, name);
        if (idx < 0) throw ParseError(std::string(what) + ": unknown agent '" + name + "'");
        g = g.with(idx);
    }
    return g;
}

std::vector<std::string> load_props(const json& j) {
    auto props = string_list(j, "props");
    for (const auto& p : props)
        if (!valid_prop_id(p)) throw ParseError("invalid proposition id '" + p + "'");
    std::sort(props.begin(), props.end());
    props.erase(std::unique(props.begin(), props.end()), props.end());
    return props;
}

LoadedFile load_frame_json(const json& j, bool complete) {
    FrameData d;
    d.agents = load_roster(j);
    if (!j.contains("worlds") || !j.at("worlds").is_array())
        throw ParseError("frame file needs a worlds array");
    for (const auto& w : j.at("worlds")) {
        std::string id = w.at("id").get<std::string>();
        if (roster_index(d.worlds, id) >= 0) throw ParseError("duplicate world id '" + id + "'");
        d.worlds.push_back(id);
        d.props.push_back(w.contains("props") ? load_props(w.at("props"))
                                              : std::vector<std::string>{});
    }
    std::vector<char> seen(static_cast<std::size_t>(1) << d.agents.size(), 0);
    if (j.contains("relations")) {
        for (const auto& r : j.at("relations")) {
            FrameData::Rel rel;
            rel.group = load_group(r.at("group"), d.agents, "relation group");
            if (seen[rel.group.bits])
                throw ParseError("group " + group_label(rel.group, d.agents) + " listed twice");
            seen[rel.group.bits] = 1;
            for (const auto& pr : r.at("pairs")) {
                auto ids = string_list(pr, "pair");
                if (ids.size() != 2) throw ParseError("pairs must have two world ids");
                int x = roster_index(d.worlds, ids[0]);
                int y = roster_index(d.worlds, ids[1]);
                if (x < 0 || y < 0)
                    throw ParseError("pair mentions unknown world '" + (x < 0 ? ids[0] : ids[1]) + "'");
                rel.pairs.emplace_back(x, y);
            }
            d.relations.push_back(std::move(rel));
        }
    }
    LoadedFile out;
    out.kind = FileKind::Frame;
    out.model = build_model(d, complete);
    return out;
}

LoadedFile load_covering_json(const json& j) {
    EpistemicCoveringModel x;
    auto agents = load_roster(j);
    x.cov.top.agents = agents;
    x.cov.base = Cset::make(agents);

    struct RawSimplex {
        std::string id;
        AgentSet group;
        std::map<std::string, std::string> faces;
    };
    std::vector<RawSimplex> raw;
    for (const auto& s : j.at("base").at("simplices")) {
        RawSimplex r;
        r.id = s.at("id").get<std::string>();
        r.group = load_group(s.at("group"), agents, "simplex group");
        if (s.contains("faces"))
            for (const auto& [k, v] : s.at("faces").items()) r.faces[k] = v.get<std::string>();
        raw.push_back(std::move(r));
    }
    for (const auto& r : raw) {
        if (x.cov.base.find(r.group, r.id) >= 0)
            throw ParseError("duplicate simplex id '" + r.id + "' at level " +
                             group_label(r.group, agents));
        x.cov.base.ids[r.group.bits].push_back(r.id);
    }
    for (int mask = 1; mask < x.cov.base.level_count(); ++mask)
        for (int a : AgentSet(static_cast<std::uint32_t>(mask)).members())
            x.cov.base.face[static_cast<std::size_t>(mask)][static_cast<std::size_t>(a)].assign(
                x.cov.base.ids[static_cast<std::size_t>(mask)].size(), -1);
    for (const auto& r : raw) {
        int idx = x.cov.base.find(r.group, r.id);
        for (int a : r.group.members()) {
            auto it = r.faces.find(agents[static_cast<std::size_t>(a)]);
            if (it == r.faces.end())
                throw ParseError("simplex '" + r.id + "' misses its face for agent " +
                                 agents[static_cast<std::size_t>(a)]);
            int tgt = x.cov.base.find(r.group.without(a), it->second);
            if (tgt < 0)
                throw ParseError("simplex '" + r.id + "': face '" + it->second +
                                 "' not found one level below");
            x.cov.base.face[r.group.bits][static_cast<std::size_t>(a)][static_cast<std::size_t>(idx)] = tgt;
        }
        for (const auto& [k, v] : r.faces)
            if (roster_index(agents, k) < 0 || !r.group.contains(roster_index(agents, k)))
                throw ParseError("simplex '" + r.id + "' lists a face for agent '" + k +
                                 "' outside its group");
    }

    for (const auto& w : j.at("worlds")) {
        TopCset::World tw;
        tw.id = w.at("id").get<std::string>();
        if (x.cov.top.world_index(tw.id) >= 0)
            throw ParseError("duplicate world id '" + tw.id + "'");
        tw.color = load_group(w.at("color"), agents, "world color");
        int img = x.cov.base.find(tw.color, w.at("image").get<std::string>());
        if (img < 0)
            throw ParseError("world '" + tw.id + "': image simplex not found at its color level");
        x.cov.top.worlds.push_back(tw);
        x.cov.image.push_back(img);
        x.labels.push_back(w.contains("props") ? load_props(w.at("props"))
                                               : std::vector<std::string>{});
    }

    auto cdefects = validate_cset(x.cov.base);
    if (!cdefects.empty()) {
        std::string msg = "invalid base cset:";
        for (const auto& d : cdefects) msg += "\n  " + describe(d, x.cov.base);
        throw ValidationError(msg);
    }
    auto defects = validate_covering(x.cov);
    if (!defects.empty()) {
        std::string msg = "invalid covering:";
        for (const auto& d : defects) msg += "\n  " + describe(d);
        throw ValidationError(msg);
    }

    LoadedFile out;
    out.kind = FileKind::Covering;
    out.covering = std::move(x);
    return out;
}

LoadedFile load_scenario_json(const json& j) {
    SensorScenario sc;
    for (const auto& s : j.at("sensors")) {
        Sensor sen;
        sen.name = s.at("name").get<std::string>();
        sen.cx = s.at("center").at(0).get<double>();
        sen.cy = s.at("center").at(1).get<double>();
        sen.radius = s.at("radius").get<double>();
        sc.sensors.push_back(sen);
    }
    for (const auto& w : j.at("worlds")) {
        SensorWorld sw;
        sw.id = w.at("id").get<std::string>();
        for (const auto& t : w.at("targets"))
            sw.targets.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
        sc.worlds.push_back(std::move(sw));
    }
    LoadedFile out;
    out.kind = FileKind::Scenario;
    out.model = build_sensor_frame(sc);
    out.scenario = std::move(sc);
    return out;
}

}  // namespace

LoadedFile parse_model_text(const std::string& text, bool complete) {
    json j = parse_json(text);
    try {
        if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
            throw ParseError("model files need a top-level \"kind\" field");
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "frame") return load_frame_json(j, complete);
        if (kind == "covering") return load_covering_json(j);
        if (kind == "scenario") return load_scenario_json(j);
        throw ParseError("unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad model file: ") + e.what());
    }
}

LoadedFile load_model_file(const std::string& path, bool complete) {
    return parse_model_text(read_file(path), complete);
}

std::string frame_to_json(const GeneralizedEpistemicModel& m) {
    json j;
    j["kind"] = "frame";
    j["agents"] = m.frame.agents;
    j["worlds"] = json::array();
    for (int w = 0; w < m.frame.world_count(); ++w)
        j["worlds"].push_back({{"id", m.frame.worlds[static_cast<std::size_t>(w)]},
                               {"props", m.valuation[static_cast<std::size_t>(w)]}});
    j["relations"] = json::array();
    for (int mask = 0; mask < m.frame.group_count(); ++mask) {
        const Per& p = m.frame.rel[static_cast<std::size_t>(mask)];
        auto pairs = p.pairs();
        if (pairs.empty()) continue;
        json rel;
        json group = json::array();
        for (int a : AgentSet(static_cast<std::uint32_t>(mask)).members())
            group.push_back(m.frame.agents[static_cast<std::size_t>(a)]);
        rel["group"] = group;
        rel["pairs"] = json::array();
        for (auto [x, y] : pairs)
            rel["pairs"].push_back({m.frame.worlds[static_cast<std::size_t>(x)],
                                    m.frame.worlds[static_cast<std::size_t>(y)]});
        j["relations"].push_back(rel);
    }
    return j.dump(2) + "\n";
}

std::string covering_to_json(const EpistemicCoveringModel& x) {
    json j;
    j["kind"] = "covering";
    j["agents"] = x.cov.top.agents;
    json simplices = json::array();
    for (int mask = 0; mask < x.cov.base.level_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        for (int s = 0; s < x.cov.base.size(g); ++s) {
            json e;
            e["id"] = x.cov.base.ids[static_cast<std::size_t>(mask)][static_cast<std::size_t>(s)];
            json group = json::array();
            for (int a : g.members()) group.push_back(x.cov.top.agents[static_cast<std::size_t>(a)]);
            e["group"] = group;
            json faces = json::object();
            for (int a : g.members())
                faces[x.cov.top.agents[static_cast<std::size_t>(a)]] =
                    x.cov.base.ids[static_cast<std::size_t>(mask & ~(1 << a))]
                                  [static_cast<std::size_t>(x.cov.base.face1(g, a, s))];
            e["faces"] = faces;
            simplices.push_back(e);
        }
    }
    j["base"] = {{"simplices", simplices}};
    j["worlds"] = json::array();
    for (int w = 0; w < x.cov.top.world_count(); ++w) {
        const auto& tw = x.cov.top.worlds[static_cast<std::size_t>(w)];
        json e;
        e["id"] = tw.id;
        json color = json::array();
        for (int a : tw.color.members()) color.push_back(x.cov.top.agents[static_cast<std::size_t>(a)]);
        e["color"] = color;
        e["image"] = x.cov.base.ids[tw.color.bits][static_cast<std::size_t>(x.cov.image[static_cast<std::size_t>(w)])];
        e["props"] = x.labels[static_cast<std::size_t>(w)];
        j["worlds"].push_back(e);
    }
    return j.dump(2) + "\n";
}

std::string scenario_to_json(const SensorScenario& sc) {
    json j;
    j["kind"] = "scenario";
    j["sensors"] = json::array();
    for (const auto& s : sc.sensors)
        j["sensors"].push_back(
            {{"name", s.name}, {"center", {s.cx, s.cy}}, {"radius", s.radius}});
    j["worlds"] = json::array();
    for (const auto& w : sc.worlds) {
        json targets = json::array();
        for (const auto& t : w.targets) targets.push_back({t[0], t[1]});
        j["worlds"].push_back({{"id", w.id}, {"targets", targets}});
    }
    return j.dump(2) + "\n";
}

std::map<std::string, std::string> parse_world_map(const std::string& text) {
    json j = parse_json(text);
    try {
        if (j.at("kind").get<std::string>() != "map")
            throw ParseError("expected a file of kind \"map\"");
        std::map<std::string, std::string> out;
        for (const auto& [k, v] : j.at("map").items()) out[k] = v.get<std::string>();
        return out;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad map file: ") + e.what());
    }
}

std::map<std::string, std::string> load_world_map(const std::string& path) {
    return parse_world_map(read_file(path));
}

std::string to_dot(const EpistemicCoveringModel& x) {
    const Cset& b = x.cov.base;
    std::ostringstream os;
    auto q = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    os << "digraph covering {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    std::vector<std::vector<int>> by_dim(static_cast<std::size_t>(b.agent_count()) + 2);
    for (int mask = 0; mask < b.level_count(); ++mask)
        by_dim[static_cast<std::size_t>(AgentSet(static_cast<std::uint32_t>(mask)).size())].push_back(mask);
    for (std::size_t dim = 0; dim < by_dim.size(); ++dim) {
        bool any = false;
        for (int mask : by_dim[dim]) any = any || !b.ids[static_cast<std::size_t>(mask)].empty();
        if (!any) continue;
        os << "  { rank=same; // dimension " << static_cast<int>(dim) - 1 << "\n";
        for (int mask : by_dim[dim])
            for (const auto& id : b.ids[static_cast<std::size_t>(mask)]) os << "    " << q(id) << ";\n";
        os << "  }\n";
    }
    for (int mask = 1; mask < b.level_count(); ++mask) {
        AgentSet g(static_cast<std::uint32_t>(mask));
        for (int s = 0; s < b.size(g); ++s)
            for (int a : g.members())
                os << "  " << q(b.ids[static_cast<std::size_t>(mask)][static_cast<std::size_t>(s)])
                   << " -> "
                   << q(b.ids[static_cast<std::size_t>(mask & ~(1 << a))]
                              [static_cast<std::size_t>(b.face1(g, a, s))])
                   << " [label=" << q(b.agents[static_cast<std::size_t>(a)]) << "];\n";
    }
    for (int w = 0; w < x.cov.top.world_count(); ++w) {
        const auto& tw = x.cov.top.worlds[static_cast<std::size_t>(w)];
        std::string label = tw.id;
        if (!x.labels[static_cast<std::size_t>(w)].empty()) {
            label += " [";
            for (std::size_t i = 0; i < x.labels[static_cast<std::size_t>(w)].size(); ++i) {
                if (i) label += ',';
                label += x.labels[static_cast<std::size_t>(w)][i];
            }
            label += ']';
        }
        os << "  " << q("world:" + tw.id) << " [shape=note, style=dashed, label=" << q(label)
           << "];\n";
        os << "  " << q("world:" + tw.id) << " -> "
           << q(b.ids[tw.color.bits][static_cast<std::size_t>(x.cov.image[static_cast<std::size_t>(w)])])
           << " [style=dotted];\n";
    }
    os << "}\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file '" + path + "'");
    out << text;
}

}  // namespace episim
