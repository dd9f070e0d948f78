#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracsem {

/// Failure categories surfaced by the library. The CLI maps each to a
/// distinct message prefix and a nonzero exit status.
enum class ErrorCode {
    domain,
    pole,
    non_convergence,
    tail_bound,
    remainder_too_large,
    zero_mean_violation,
    divergence,
    io,
    header_mismatch,
    validation,
    extrapolation_divergence,
    fit_residual,
    unsupported,
    config,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fracsem
