#pragma once

#include <stdexcept>
#include <string>

namespace msox {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// malformed input text / json
struct ParseError : Error {
    using Error::Error;
};

// a configured size bound would be exceeded; raised instead of running forever
struct GuardExceeded : Error {
    using Error::Error;
};

// operands disagree on symbols, color count or rank
struct SignatureMismatch : Error {
    using Error::Error;
};

// no two nested join nodes of equal type exist in the given tree
struct NoRepeatedType : Error {
    using Error::Error;
};

// the same lookup key was observed with two different edge answers
struct ConsistencyViolation : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace msox
