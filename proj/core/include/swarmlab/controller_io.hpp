#pragma once

#include <string>

#include "swarmlab/design.hpp"
#include "swarmlab/mission.hpp"

namespace swarmlab {

// Controllers are stored as small text files with a format tag in the first
// line: "# fsm-v1" followed by the flag string, or "# ann-v1" followed by
// one weight per line. Round-trips are byte-exact.
std::string controller_to_text(const Controller& controller);
Controller controller_from_text(const std::string& text);

Controller load_controller_file(const std::string& path);
void save_controller_file(const Controller& controller, const std::string& path);

Method method_of(const Controller& controller);

}  // namespace swarmlab
