#pragma once

#include <stdexcept>
#include <string>

namespace revisop {

/// Malformed or out-of-range arguments (bad pose, non-positive λ, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Arguments outside the validity domain of a formula, e.g. a perimeter
/// above the cap for (c, λ).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two independent computations of the same quantity disagree, or a
/// solver did not reach its residual target.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace revisop
