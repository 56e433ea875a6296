#pragma once

#include <stdexcept>
#include <string>

namespace netadapt {

// Base for all library errors. `module` names the component that failed so the
// CLI can report it without unwinding type information.
class Error : public std::runtime_error {
public:
  Error(std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

private:
  std::string module_;
};

#define NETADAPT_DEFINE_ERROR(Name)                        \
  class Name : public Error {                              \
  public:                                                  \
    using Error::Error;                                    \
  }

NETADAPT_DEFINE_ERROR(InvalidArgument);
NETADAPT_DEFINE_ERROR(DimensionMismatch);
NETADAPT_DEFINE_ERROR(LengthMismatch);
NETADAPT_DEFINE_ERROR(NotSymmetric);
NETADAPT_DEFINE_ERROR(NotPositiveDefinite);
NETADAPT_DEFINE_ERROR(NoConvergence);
NETADAPT_DEFINE_ERROR(DegenerateData);
NETADAPT_DEFINE_ERROR(MissingPredictions);
NETADAPT_DEFINE_ERROR(Infeasible);
NETADAPT_DEFINE_ERROR(EmptyTrainingSet);
NETADAPT_DEFINE_ERROR(ZeroDegree);
NETADAPT_DEFINE_ERROR(ParseError);
NETADAPT_DEFINE_ERROR(RaggedRows);
NETADAPT_DEFINE_ERROR(NonIntegerLabel);
NETADAPT_DEFINE_ERROR(ConfigError);

#undef NETADAPT_DEFINE_ERROR

}  // namespace netadapt
