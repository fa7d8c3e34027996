#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swarmlab {

// Error in a textual artifact (controller descriptor, config file,
// arena file). `position` is the zero-based token or line index the
// parser was looking at.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("position " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Rejection sampling could not place the swarm.
class PlacementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace swarmlab
