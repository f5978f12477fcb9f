#pragma once

#include <stdexcept>
#include <string>

namespace tbell {

// Base class for every error this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDirectionError : Error {
    using Error::Error;
};

struct InvalidAmplitudeError : Error {
    using Error::Error;
};

struct InvalidStateError : Error {
    using Error::Error;
};

struct InvalidMarginalError : Error {
    using Error::Error;
};

struct InvalidModelError : Error {
    using Error::Error;
};

struct InvalidConfigError : Error {
    using Error::Error;
};

// A required setting pair has no throws; names the pair in the message.
struct InsufficientDataError : Error {
    using Error::Error;
};

// Record-file syntax or validation failure; carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    std::size_t line_number;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace tbell
