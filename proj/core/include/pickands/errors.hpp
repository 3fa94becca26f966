#pragma once

#include <stdexcept>
#include <string>

namespace pickands {

// Circulant embedding produced an eigenvalue below the clamp tolerance.
// Not expected for fGn, whose embedding is nonnegative definite; signals
// a numerically invalid plan rather than a recoverable condition.
class EmbeddingNotPSD : public std::runtime_error {
public:
    explicit EmbeddingNotPSD(const std::string& what) : std::runtime_error(what) {}
};

// Invalid campaign or study configuration (bad replication count, unknown
// format, parameter outside its domain when reached through config parsing).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pickands
