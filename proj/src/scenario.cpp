#include "episim/scenario.hpp"

#include <cmath>

#include "episim/errors.hpp"

namespace episim {

GeneralizedEpistemicModel build_sensor_frame(const SensorScenario& sc) {
    const int ns = static_cast<int>(sc.sensors.size());
    if (ns > kMaxAgents) throw ValidationError("too many sensors");
    std::vector<std::string> names;
    for (const auto& s : sc.sensors) {
        if (s.radius <= 0) throw ValidationError("sensor " + s.name + " has non-positive radius");
        if (!valid_agent_name(s.name)) throw ValidationError("bad sensor name '" + s.name + "'");
        if (roster_index(names, s.name) >= 0)
            throw ValidationError("duplicate sensor name '" + s.name + "'");
        names.push_back(s.name);
    }
    std::vector<std::string> ids;
    for (const auto& w : sc.worlds) {
        if (roster_index(ids, w.id) >= 0) throw ValidationError("duplicate world id '" + w.id + "'");
        ids.push_back(w.id);
    }

    // visibility mask per target, rejecting boundary incidences
    const int n = static_cast<int>(sc.worlds.size());
    std::vector<std::vector<AgentSet>> seen(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w)
        for (const auto& t : sc.worlds[static_cast<std::size_t>(w)].targets) {
            AgentSet m;
            for (int s = 0; s < ns; ++s) {
                const Sensor& sen = sc.sensors[static_cast<std::size_t>(s)];
                double d = std::hypot(t[0] - sen.cx, t[1] - sen.cy);
                if (std::fabs(d - sen.radius) <= 1e-9)
                    throw ValidationError("degenerate geometry: target in world " +
                                          sc.worlds[static_cast<std::size_t>(w)].id +
                                          " lies on the boundary of sensor " + sen.name);
                if (d < sen.radius) m = m.with(s);
            }
            seen[static_cast<std::size_t>(w)].push_back(m);
        }

    // count of targets inside the common region of group V
    auto count = [&](int w, AgentSet v) {
        int k = 0;
        for (AgentSet m : seen[static_cast<std::size_t>(w)])
            if (v.subset_of(m)) ++k;
        return k;
    };

    GeneralizedEpistemicModel m;
    m.frame = GeneralizedEpistemicFrame::make(names, ids);
    for (int mask = 0; mask < m.frame.group_count(); ++mask) {
        AgentSet u(static_cast<std::uint32_t>(mask));
        // signature of a world under U: counts for every nonempty V <= U
        std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
        for (int w = 0; w < n; ++w)
            for (std::uint32_t sub = u.bits; sub; sub = (sub - 1) & u.bits)
                sig[static_cast<std::size_t>(w)].push_back(count(w, AgentSet(sub)));
        std::vector<int> raw(static_cast<std::size_t>(n), -1);
        std::vector<std::pair<std::vector<int>, int>> keys;
        for (int w = 0; w < n; ++w) {
            int id = -1;
            for (auto& [k, v] : keys)
                if (k == sig[static_cast<std::size_t>(w)]) { id = v; break; }
            if (id < 0) {
                id = static_cast<int>(keys.size());
                keys.emplace_back(sig[static_cast<std::size_t>(w)], id);
            }
            raw[static_cast<std::size_t>(w)] = id;
        }
        m.frame.rel[static_cast<std::size_t>(mask)] = Per::from_class_ids(std::move(raw));
    }
    m.valuation.assign(static_cast<std::size_t>(n), {});
    return m;
}

SensorScenario paper_sensor_scenario() {
    SensorScenario sc;
    sc.sensors = {{"s1", 0.0, 0.0, 1.0}, {"s2", 1.2, 0.0, 1.0}, {"s3", 0.6, -1.04, 1.0}};
    sc.worlds = {
        {"w1", {{0.6, -0.4}}},
        {"w2", {{1.2, -0.7}, {-0.2, 0.2}}},
        {"w3", {{0.0, -0.7}, {1.4, 0.2}}},
        {"w4", {{0.6, 0.3}, {0.3, -1.5}}},
        {"w5", {{1.4, 0.2}, {-0.2, 0.2}, {0.3, -1.5}}},
    };
    return sc;
}

}  // namespace episim
