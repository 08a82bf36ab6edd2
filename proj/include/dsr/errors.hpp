#pragma once

#include <stdexcept>
#include <string>

namespace dsr {

// Common base so callers can catch everything raised by this library at once.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arguments violate a documented precondition (sizes, ranges, missing vertices, ...).
class invalid_input_error : public error {
public:
    explicit invalid_input_error(const std::string& msg) : error(msg) {}
};

// A geometric model is malformed (duplicate endpoints, out-of-range coordinates, ...).
class invalid_model_error : public error {
public:
    explicit invalid_model_error(const std::string& msg) : error(msg) {}
};

// A symbolic-line handle does not belong to the line it was used with.
class invalid_reference_error : public error {
public:
    explicit invalid_reference_error(const std::string& msg) : error(msg) {}
};

// A slide was requested from a vertex that carries no token.
class no_token_error : public error {
public:
    explicit no_token_error(const std::string& msg) : error(msg) {}
};

// A slide uses a non-edge or would break a required invariant.
class illegal_move_error : public error {
public:
    explicit illegal_move_error(const std::string& msg) : error(msg) {}
};

// A variable flip would falsify the formula; the message names a violated clause.
class illegal_flip_error : public error {
public:
    explicit illegal_flip_error(const std::string& msg) : error(msg) {}
};

// An exact search would exceed the configured state budget.
class resource_limit_error : public error {
public:
    explicit resource_limit_error(const std::string& msg) : error(msg) {}
};

// A text payload could not be parsed; messages carry 1-based line numbers.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

} // namespace dsr
