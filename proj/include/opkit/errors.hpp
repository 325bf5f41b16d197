#ifndef OPKIT_ERRORS_HPP
#define OPKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opkit {

// Invalid argument or out-of-domain input.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed input document; message names the offending field.
class schema_error : public std::invalid_argument {
public:
    explicit schema_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numeric procedure failed to converge or lost stability.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace opkit

#endif
