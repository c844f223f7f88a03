#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qstat {

// Base of every error the library raises. `kind()` is the stable, typed name
// printed by the CLI on exit code 1.
class error : public std::runtime_error {
 public:
  error(std::string_view kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  std::string_view kind() const noexcept { return kind_; }

 private:
  std::string_view kind_;
};

#define QSTAT_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : error(Kind, what) {}        \
  }

QSTAT_DEFINE_ERROR(invalid_argument_error, "invalid-argument");
QSTAT_DEFINE_ERROR(domain_error, "domain-error");
QSTAT_DEFINE_ERROR(pole_error, "pole-error");
QSTAT_DEFINE_ERROR(singular_divisor_error, "singular-divisor");
QSTAT_DEFINE_ERROR(branch_cut_error, "branch-cut");
QSTAT_DEFINE_ERROR(unsupported_input_error, "unsupported-input");
QSTAT_DEFINE_ERROR(insufficient_data_error, "insufficient-data");
QSTAT_DEFINE_ERROR(instability_error, "instability");
QSTAT_DEFINE_ERROR(io_error, "io-error");

#undef QSTAT_DEFINE_ERROR

}  // namespace qstat
