#pragma once

#include <stdexcept>
#include <string>

namespace srsbs {

/// Invalid configuration detected before any processing takes place.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or malformed input/output file. The message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace srsbs
