#pragma once

#include <stdexcept>
#include <string>

namespace coarsekit {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad metric table, negative scale, inconsistent shapes
// coming from outside the library (files, CLI arguments).
struct ValidationError : Error {
    using Error::Error;
};

// Two arrays/matrices were combined whose index sets or spaces disagree.
struct IndexMismatchError : Error {
    using Error::Error;
};

// A construction ran to completion but its verified postconditions failed.
// Carries the name of the first failing condition.
struct ConstructionDefect : Error {
    std::string condition;
    ConstructionDefect(const std::string& cond, const std::string& what)
        : Error(what), condition(cond) {}
};

// Unreadable or structurally invalid serialized artifact.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace coarsekit
