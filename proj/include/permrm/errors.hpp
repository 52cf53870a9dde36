#pragma once

#include <stdexcept>
#include <string>

namespace permrm {

/// Raised when a structurally valid request cannot be executed with the
/// given configuration (e.g. a frozen set that is not permutation-invariant,
/// or mutually exclusive early-termination modes).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace permrm
