#pragma once

#include <stdexcept>
#include <string>

namespace s2flow {

// Bad configuration: unknown scheme, missing capability, malformed input.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failure during time stepping (non-finite state, solver divergence).
// Carries the step index where the failure occurred, -1 if not applicable.
struct numerical_error : std::runtime_error {
    long long step = -1;
    numerical_error(const std::string& what, long long step_index = -1)
        : std::runtime_error(what), step(step_index) {}
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace s2flow
