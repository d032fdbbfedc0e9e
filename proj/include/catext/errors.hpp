#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace catext {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction was asked to enumerate nerves of a category above the
// configured morphism bound.
struct SizeGuardExceeded : Error {
    using Error::Error;
};

// homology_at received maps whose composite is nonzero.
struct CompositionNonzero : Error {
    using Error::Error;
};

// Two diagrams that must share a base category or coefficient ring do not.
struct IncompatibleBase : Error {
    using Error::Error;
};

// Malformed input file.
struct ParseError : Error {
    using Error::Error;
};

// A verified internal invariant failed; indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

// Morphism bound for nerve-style enumerations.  Overridable through the
// CATEXT_SIZE_GUARD environment variable; read on every call so tests can
// adjust it.
inline std::size_t size_guard_limit() {
    if (const char* s = std::getenv("CATEXT_SIZE_GUARD")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(s, &end, 10);
        if (end != s && v > 0) return static_cast<std::size_t>(v);
    }
    return 64;
}

} // namespace catext
