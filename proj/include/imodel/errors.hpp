#pragma once

#include <stdexcept>
#include <string>

namespace imodel {

// Input data violates a format rule or a model invariant. CLI exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failure (missing file, unwritable path). CLI exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace imodel
