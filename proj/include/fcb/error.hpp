#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fcb {

enum class ErrorCode {
    invalid_model,
    disconnected_structure,
    domain,
    parse,
    unsupported_3d,
    rank_deficient,
    not_symmetric,
    not_positive_definite,
    zero_row,
    chopped_pivot_breakdown,
    invalid_load,
    usage,
    io,
    internal,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports is an fcb::Error; the CLI prints
// "error: <code>: <message>" on a single line.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fcb
