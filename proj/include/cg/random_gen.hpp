#ifndef CG_RANDOM_GEN_HPP
#define CG_RANDOM_GEN_HPP

#include "cg/bisection.hpp"
#include "cg/cantor.hpp"
#include "cg/group.hpp"
#include "cg/gtable.hpp"
#include "cg/twisted.hpp"

namespace cg {

// Seeded generators for randomized suites.  All draws are deterministic in
// the Rng state; elements are built by random expansion from the identity,
// then shuffled and relabelled, so every output is valid by construction.

GTable random_table(const OraclePtr& oracle, Rng& rng, int max_expansions = 5);

std::vector<BrickFn> random_brick_partition(const SAction& action, Rng& rng,
                                            int steps);

TwistTable random_twist_table(const ActionPtr& action, Rng& rng,
                              int max_splits = 4);

// Possibly-partial bisections: J of a random table with parts dropped.
Bisection random_word_bisection(const OraclePtr& oracle, Rng& rng);
Bisection random_twisted_bisection(const ActionPtr& action, Rng& rng);

// Nonempty unions of blocks of a random refinement.
ClopenSet random_clopen_words(Rng& rng);
ClopenSet random_clopen_bricks(const SAction& action, Rng& rng);

CantorPoint random_point(Rng& rng, std::size_t max_preperiod = 3,
                         std::size_t max_period = 3);

}  // namespace cg

#endif
