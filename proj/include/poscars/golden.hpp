#pragma once

#include <string>
#include <vector>

#include "poscars/sim.hpp"

namespace poscars {

// The embedded three-server walkthrough: one two-step chain, a carried
// request at the first hop and uneven backlogs at the second. Checks the two
// forced forwarding choices (cheap link vs balanced queues) and the
// pre-service variant where the next slot's request is served early.
// Returns human-readable mismatches; empty means every figure matched.
std::vector<std::string> golden_check();

// The static scenario, exposed for tests. window_size applies to the chain.
Model golden_model(int window_size);

}  // namespace poscars
