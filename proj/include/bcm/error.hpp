#pragma once
#include <stdexcept>
#include <string>

namespace bcm {

enum class ErrorKind {
    invalid_bounds,
    unknown_process,
    duplicate_process,
    invalid_path,
    external_at_zero,
    duplicate_external,
    invalid_schedule,
    absent_node,
    not_recognized,
    time_zero_base,
    positive_cycle,
    invalid_timing,
    horizon_overflow,
    budget_exceeded,
    unknown_node,
    parse_error,
    inconsistent,
    internal,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const { return kind_; }
    const std::string& detail() const { return detail_; }

  private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace bcm
