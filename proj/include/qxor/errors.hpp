#pragma once

#include <stdexcept>
#include <string>

namespace qxor {

// Exit codes used by the command-line front end.
enum class ExitCode : int {
    ok = 0,
    usage = 2,
    resource = 3,
    input_format = 4,
};

// Caller violated a precondition (length mismatch, out-of-range parameter).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string &what) : std::invalid_argument(what) {}
};

// Requested computation exceeds a configured budget (enumeration cap).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string &what) : std::runtime_error(what) {}
};

// Malformed input file or document.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace qxor
