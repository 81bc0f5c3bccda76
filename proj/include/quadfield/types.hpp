#pragma once

#include <gmpxx.h>

#include <string>

namespace quadfield {

/// Arbitrary-precision integer used throughout the library.
using Int = mpz_class;

/// Three-valued answer for questions that may exhaust a resource budget
/// before they can be decided (e.g. squarefreeness of a large integer).
enum class Trilean { yes, no, unknown };

inline const char* to_string(Trilean t) {
    switch (t) {
        case Trilean::yes: return "true";
        case Trilean::no: return "false";
        default: return "unknown";
    }
}

}  // namespace quadfield
