#pragma once

#include <stdexcept>
#include <string>

namespace regsep {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Dimension / shape mismatch between arguments.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

}  // namespace regsep
