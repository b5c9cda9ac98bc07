#pragma once

#include <stdexcept>
#include <string>

namespace percom {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (carries a line number in the message).
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// Structurally invalid input (self-loop, duplicate edge, disconnected graph).
class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

// Caller violated a documented precondition.
class argument_error : public error {
public:
    explicit argument_error(const std::string& msg) : error(msg) {}
};

// A domain-level contract failed (e.g. disconnected subset where a
// connected one is required, infeasible merge).
class domain_error : public error {
public:
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// The benchmark generator could not satisfy its feasibility checks.
class generation_error : public error {
public:
    explicit generation_error(const std::string& msg) : error(msg) {}
};

} // namespace percom
