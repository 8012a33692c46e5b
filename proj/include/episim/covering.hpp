#ifndef EPISIM_COVERING_HPP
#define EPISIM_COVERING_HPP

#include <string>
#include <vector>

#include "episim/cset.hpp"
#include "episim/frame.hpp"

namespace episim {

/// Projective cset, stored as its list of maximal simplices (the worlds):
/// a disjoint union of standard simplices, one per world, of the world's
/// color. Subsimplices are the pairs (world, V <= color) and are never
/// materialized.
struct TopCset {
    struct World {
        std::string id;
        AgentSet color;
        bool operator==(const World&) const = default;
    };
    std::vector<std::string> agents;
    std::vector<World> worlds;

    int world_count() const { return static_cast<int>(worlds.size()); }
    int world_index(std::string_view id) const;
    bool operator==(const TopCset&) const = default;
};

/// The projective view of a TopCset as a plain cset, with simplex ids
/// "<world>/<group>"; used by tests and exports.
Cset expand_top(const TopCset& t);

/// Epistemic covering f : E -> B. f is stored on worlds only; the image of a
/// subsimplex (w,V) is the derived V-face of image[w].
struct EpistemicCovering {
    TopCset top;
    Cset base;
    std::vector<int> image;  // per world, index into base.ids[color.bits]

    bool operator==(const EpistemicCovering&) const = default;

    /// Base simplex under the V-subsimplex of world w (V <= color(w)).
    int world_face(int w, AgentSet v) const {
        return base.face_to(top.worlds[static_cast<std::size_t>(w)].color,
                            image[static_cast<std::size_t>(w)], v);
    }
};

struct EpistemicCoveringModel {
    EpistemicCovering cov;
    std::vector<std::vector<std::string>> labels;  // per world, sorted prop ids

    bool operator==(const EpistemicCoveringModel&) const = default;
};

struct CoveringDefect {
    enum class Kind { BadImage, MissingPreimage };
    Kind kind;
    std::string world;    // BadImage
    std::string simplex;  // MissingPreimage: maximal base simplex without a world
    AgentSet group{};
};
std::string describe(const CoveringDefect& d);

/// Checks image well-formedness and surjectivity onto the maximal simplices
/// of the base. Pre: valid base cset.
std::vector<CoveringDefect> validate_covering(const EpistemicCovering& c);

// --------------------------------------------------------------------------
// the two translation functors

/// Worlds are the top-cset worlds; w_s ~_U w_s' iff U fits both colors and
/// the U-faces of the images coincide; valuation copied from the labels.
GeneralizedEpistemicModel kappa(const EpistemicCoveringModel& x);

/// Top = one world per model world colored by its alive set; base level U is
/// the quotient by ~_U; faces send [w]_V to [w]_U; f(w) = [w]_{live(w)}.
/// Output is already in canonical form.
EpistemicCoveringModel sigma(const GeneralizedEpistemicModel& m);

/// Deterministic relabelling of base simplices (by the worlds whose image
/// faces they are) so that isomorphic coverings compare equal with ==.
EpistemicCoveringModel canonical_form(const EpistemicCoveringModel& x);

// --------------------------------------------------------------------------

bool satisfies_covering(const EpistemicCoveringModel& x, int world, const Formula& phi);
bool satisfies_covering_explain(const EpistemicCoveringModel& x, int world, const Formula& phi,
                                std::vector<EvalStep>& steps);

struct CoveringPropertyVerdict {
    ModelProperty prop{};
    bool holds = true;
    std::vector<std::string> witness;  // world or simplex ids, plus a group label when relevant
};
CoveringPropertyVerdict check_covering_property(const EpistemicCovering& c, ModelProperty p);
std::string describe(const CoveringPropertyVerdict& v);

// --------------------------------------------------------------------------
// morphisms of coverings: a world-wise map on top simplices (the image world
// may have a larger color; the simplex image is the color(w)-face of it) and
// a per-level base map.

struct CoveringMorphismWitness {
    std::vector<int> world_map;                // E world -> E' world
    std::vector<std::vector<int>> base_map;    // [mask] -> per-simplex map into B'
};

CheckResult check_covering_morphism(const EpistemicCoveringModel& x,
                                    const EpistemicCoveringModel& y,
                                    const CoveringMorphismWitness& wit);

/// Image of a frame-model morphism under sigma.
CoveringMorphismWitness sigma_morphism(const GeneralizedEpistemicModel& src,
                                       const GeneralizedEpistemicModel& dst,
                                       const std::vector<int>& map);

/// Image of a covering morphism under kappa (the world map itself).
std::vector<int> kappa_morphism(const CoveringMorphismWitness& wit);

}  // namespace episim

#endif
