#ifndef EPISIM_IO_HPP
#define EPISIM_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "episim/covering.hpp"
#include "episim/frame.hpp"
#include "episim/scenario.hpp"

namespace episim {

/// Raw frame input, as listed in a file: pair lists per group, before any
/// closure. Strict mode takes the pairs literally; complete mode treats them
/// as generators (closes each group under the PER laws) and completes
/// downward for compatibility. Union-closure violations are errors in both
/// modes.
struct FrameData {
    std::vector<std::string> agents;
    std::vector<std::string> worlds;
    std::vector<std::vector<std::string>> props;
    struct Rel {
        AgentSet group;
        std::vector<std::pair<int, int>> pairs;
    };
    std::vector<Rel> relations;  // at most one entry per group
};

/// Full defect report for raw input: PER laws (strict mode only, where the
/// pair lists are taken literally), compatibility, union closure. When the
/// report is empty and `out` is non-null, the built model is stored there.
std::vector<FrameDefect> validate_frame_data(const FrameData& d, bool complete,
                                             GeneralizedEpistemicModel* out);

/// Build or throw ValidationError carrying the printable report.
GeneralizedEpistemicModel build_model(const FrameData& d, bool complete);

// --------------------------------------------------------------------------
// files; the kind is sniffed from the mandatory top-level "kind" field

enum class FileKind { Frame, Covering, Scenario };

struct LoadedFile {
    FileKind kind;
    std::optional<GeneralizedEpistemicModel> model;      // Frame and Scenario
    std::optional<EpistemicCoveringModel> covering;      // Covering
    std::optional<SensorScenario> scenario;              // Scenario
};

/// Throws ParseError on malformed JSON/schema, ValidationError on invariant
/// violations (with the defect report as the message).
LoadedFile parse_model_text(const std::string& text, bool complete);
LoadedFile load_model_file(const std::string& path, bool complete);

std::string frame_to_json(const GeneralizedEpistemicModel& m);
std::string covering_to_json(const EpistemicCoveringModel& x);
std::string scenario_to_json(const SensorScenario& sc);

/// World-map file {"kind":"map","map":{...}} for bisim checks.
std::map<std::string, std::string> parse_world_map(const std::string& text);
std::map<std::string, std::string> load_world_map(const std::string& path);

/// DOT export: base simplices as nodes ranked by dimension, codim-1 face
/// maps as labelled edges, worlds as dashed annotation nodes dotted to
/// their images.
std::string to_dot(const EpistemicCoveringModel& x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace episim

#endif
