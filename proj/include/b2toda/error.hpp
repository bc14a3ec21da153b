#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace b2toda {

/// Library failure carrying a stable machine-readable code.
///
/// Codes in use: invalid_generator, formal_weights, invalid_weights,
/// not_pure_polynomial, not_in_gamma, not_gamma_type, inadmissible_id,
/// not_representable, inadmissible_pair, domain_error, invalid_satellite,
/// invalid_move, non_physical_move, parse_error, non_integral.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(detail), code_(std::move(code))
    {
    }

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace b2toda
