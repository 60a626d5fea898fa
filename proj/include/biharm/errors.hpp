#pragma once

#include <stdexcept>
#include <string>

namespace biharm {

/// Input lies outside the domain a geometry or operation is defined on.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace biharm
