#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fpqa {

// All library failures surface as Error with a stable category tag. The CLI
// prints them as one machine-readable line: "error: <category>: <detail>".
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& detail)
        : std::runtime_error(detail), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

[[noreturn]] inline void raise(const std::string& category, const std::string& detail) {
    throw Error(category, detail);
}

}  // namespace fpqa
