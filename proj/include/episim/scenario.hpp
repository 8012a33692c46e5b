#ifndef EPISIM_SCENARIO_HPP
#define EPISIM_SCENARIO_HPP

#include <array>
#include <string>
#include <vector>

#include "episim/frame.hpp"

namespace episim {

/// Sensor network: disks that count targets. Joint observation: a group can
/// tell, for each of its subgroups, how many targets the whole subgroup sees.
struct Sensor {
    std::string name;
    double cx = 0, cy = 0;
    double radius = 1;
};

struct SensorWorld {
    std::string id;
    std::vector<std::array<double, 2>> targets;
};

struct SensorScenario {
    std::vector<Sensor> sensors;
    std::vector<SensorWorld> worlds;
};

/// w ~_U w' iff for every nonempty V <= U the two worlds contain the same
/// number of targets inside the common visibility region of V; ~_empty is
/// total and every sensor is alive everywhere, so the frame is pure.
/// Containment is strict-interior; a target within 1e-9 of a boundary circle
/// is rejected as degenerate (ValidationError).
GeneralizedEpistemicModel build_sensor_frame(const SensorScenario& sc);

/// The three-sensor, five-world scenario from the worked sensor-network
/// example, with coordinates reproducing its containment pattern.
SensorScenario paper_sensor_scenario();

}  // namespace episim

#endif
