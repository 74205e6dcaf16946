#pragma once

#include <stdexcept>
#include <string>

namespace verstring {

enum class ErrorCode {
    parse,           // malformed input text
    invalid_tree,    // structural/length violation in a version tree
    out_of_range,    // index/position outside its valid range
    rank_out_of_range, // selection rank exceeds the crossing count
    bad_symbol,      // symbol outside the sequence alphabet
    io,              // file read/write failure
    format,          // malformed binary index
    internal,        // invariant broken inside the library (caller bug or corruption)
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace verstring
