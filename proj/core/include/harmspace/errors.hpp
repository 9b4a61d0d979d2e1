#pragma once

#include <stdexcept>
#include <string>

namespace harmspace {

// Configuration problems (bad config file, inconsistent method/options).
// The CLI maps these to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Data problems (unreadable files, malformed manifests, degenerate splits).
// The CLI maps these to exit code 3.
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace harmspace
