#pragma once

#include <string>
#include <vector>

#include "swarmlab/fsm.hpp"

namespace swarmlab {

// Command-line style encoding of a state machine, e.g.
//   --nstates 2 --s0 exploration --rwm0 50 --n0 1
//   --n0x0 1 --c0x0 blackfloor --p0x0 0.9 --s1 stop --n1 0
// Parsing is strict: flags must appear in exactly this order, and parsing
// errors carry the zero-based index of the offending token.
std::string fsm_to_flags(const FsmDescriptor& fsm);
FsmDescriptor fsm_from_tokens(const std::vector<std::string>& tokens);
FsmDescriptor fsm_from_flags(const std::string& text);

}  // namespace swarmlab
