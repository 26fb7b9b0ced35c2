#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace prodchan {

// Library error carrying a short machine-readable code alongside the message.
// Codes in use: "shape", "not-hermitian", "invariant", "no-split", "rank",
// "param", "not-cp", "not-tp", "not-cptp", "label-unconfirmed", "parse", "io".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace prodchan
