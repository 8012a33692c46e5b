#ifndef EPISIM_FIXTURES_HPP
#define EPISIM_FIXTURES_HPP

#include <optional>
#include <string>
#include <vector>

#include "episim/covering.hpp"
#include "episim/scenario.hpp"

namespace episim {

/// Built-in models reproducing the worked examples: the seven-world frame
/// and its covering, the small property frames and covering pictographs, and
/// the sensor network. `expected` carries the property verdicts stated in
/// the source captions.
struct Fixture {
    std::string name;
    std::string description;
    std::optional<GeneralizedEpistemicModel> model;
    std::optional<EpistemicCoveringModel> covering;
    std::optional<SensorScenario> scenario;
    std::vector<std::pair<ModelProperty, bool>> expected;
};

const std::vector<Fixture>& builtin_fixtures();
const Fixture* find_fixture(std::string_view name);  // null if absent

}  // namespace episim

#endif
