#pragma once

#include <stdexcept>
#include <string>

namespace pairbec {

// Invalid user-facing input (parameters, config keys); maps to CLI exit code 2.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured resource limit was exceeded; also maps to exit code 2.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A verification command found a violated assertion; maps to exit code 4.
class CheckFailure : public std::runtime_error {
public:
    explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

}
