#pragma once

#include <stdexcept>
#include <string>

namespace ets {

/// Base class for all errors raised by the engine.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV cell, ontology file, mapping file, query source).
/// `line` is 1-based; 0 means "not line-addressable".
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line_ = 0)
        : Error(line_ ? msg + " (line " + std::to_string(line_) + ")" : msg), line(line_) {}
    std::size_t line;
};

/// Structural violations of the canonical schema or of a loaded spec.
struct SchemaError : Error {
    using Error::Error;
};

/// Lookup of a name that does not exist (table, concept, rule, unit path).
struct LookupError : Error {
    using Error::Error;
};

} // namespace ets
