#pragma once

#include <stdexcept>
#include <string>

namespace perspectiva {

// Runtime failure with a short machine-readable name ("invalid-pixel",
// "degenerate-join", ...) next to the human-readable message. The CLI maps
// these to exit code 1 and prints the name so scripts can branch on it.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

}  // namespace perspectiva
