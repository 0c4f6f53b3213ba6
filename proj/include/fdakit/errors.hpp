#pragma once

#include <stdexcept>
#include <string>

namespace fdakit {

// Base class for all toolkit errors. The CLI maps subclasses onto exit
// codes: input/contract problems exit with 2, numeric failures with 1.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class io_error : public error { public: using error::error; };           // missing/unreadable file
class parse_error : public error { public: using error::error; };        // malformed cell or header
class balance_error : public error { public: using error::error; };      // unbalanced design
class grid_error : public error { public: using error::error; };         // invalid time grid
class domain_error : public error { public: using error::error; };       // evaluation outside [0, T]
class contract_error : public error { public: using error::error; };     // shape/label mismatch between components
class selection_error : public error { public: using error::error; };    // selector matched nothing
class conditioning_error : public error { public: using error::error; }; // singular or ill-conditioned system
class numeric_error : public error { public: using error::error; };      // iteration failed to converge

}  // namespace fdakit
