// errors.hpp -- exception hierarchy shared by all germlab components.
#pragma once

#include <stdexcept>
#include <string>

namespace germlab {

// Broad failure classes; the CLI maps them to distinct exit codes.
enum class ErrorKind {
    Input,        // bad user input: syntax, preconditions, domain violations
    Capacity,     // a configured cap was exceeded (tower degree, factor degree, precision)
    Inconsistent, // two independent computations of the same quantity disagree
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

inline void check_input(bool ok, const std::string& msg) {
    if (!ok) throw Error(ErrorKind::Input, msg);
}

inline void check_capacity(bool ok, const std::string& msg) {
    if (!ok) throw Error(ErrorKind::Capacity, msg);
}

inline void check_consistent(bool ok, const std::string& msg) {
    if (!ok) throw Error(ErrorKind::Inconsistent, msg);
}

} // namespace germlab
