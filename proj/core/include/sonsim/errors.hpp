#pragma once

#include <stdexcept>
#include <string>

namespace sonsim {

// Error with a stable machine-readable code (e.g. "no-super-peer") next to
// the human message. Codes are what tests and the CLI dispatch on.
class SimError : public std::runtime_error {
public:
    SimError(std::string code, const std::string &message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string &code() const { return code_; }

private:
    std::string code_;
};

} // namespace sonsim
