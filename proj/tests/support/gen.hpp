#ifndef EPISIM_TESTS_GEN_HPP
#define EPISIM_TESTS_GEN_HPP

#include <random>

#include "episim/covering.hpp"
#include "episim/frame.hpp"

namespace episim::testgen {

using Rng = std::mt19937_64;

/// Valid-by-construction random model: random alive sets, then random class
/// merges propagated down the subset lattice.
GeneralizedEpistemicModel random_model(Rng& rng, int max_worlds = 6, int max_agents = 4,
                                       int n_atoms = 2);

/// Valid random covering: disjoint standard simplices glued by a random
/// congruence (so non-proper, non-complex and multi-component bases all
/// occur), with random labels.
EpistemicCoveringModel random_covering(Rng& rng, int max_worlds = 6, int max_agents = 4,
                                       int n_atoms = 2);

// model-class generators for the sub-class soundness batteries
GeneralizedEpistemicModel random_pure_proper(Rng& rng, int max_worlds = 5, int max_agents = 3);
GeneralizedEpistemicModel random_proper_maximal_ne(Rng& rng, int max_agents = 3);
GeneralizedEpistemicModel random_proper_minimal_ne(Rng& rng, int max_worlds = 5,
                                                   int max_agents = 3);

Formula random_formula(Rng& rng, int n_agents, const std::vector<std::string>& atoms, int depth);

}  // namespace episim::testgen

#endif
