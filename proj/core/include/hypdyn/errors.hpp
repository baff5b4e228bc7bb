#pragma once

#include <stdexcept>
#include <string>

namespace hypdyn {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller-supplied parameter violates a documented ordering or range.
struct ParameterError : Error {
    using Error::Error;
};

// A checked precondition on the input data failed (names the violated condition).
struct PreconditionError : Error {
    using Error::Error;
};

// Input files / serialized payloads that cannot be parsed.
struct ParseError : Error {
    ParseError(const std::string& what, long line = -1)
        : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what), line_number(line) {}
    long line_number;
};

}  // namespace hypdyn
