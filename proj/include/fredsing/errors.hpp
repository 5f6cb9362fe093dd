#pragma once

#include <stdexcept>
#include <string>

namespace fredsing {

// Base of every error raised by the library. `code()` is the stable name used
// in reports and by the Python bindings.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define FREDSING_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  };

FREDSING_DEFINE_ERROR(DivisionByZeroJet)
FREDSING_DEFINE_ERROR(DomainError)
FREDSING_DEFINE_ERROR(JetSpaceMismatch)
FREDSING_DEFINE_ERROR(OrderExceedsSmoothness)
FREDSING_DEFINE_ERROR(SingularBorder)
FREDSING_DEFINE_ERROR(NotIndependent)
FREDSING_DEFINE_ERROR(SingularAffine)
FREDSING_DEFINE_ERROR(UnknownName)
FREDSING_DEFINE_ERROR(ParamOutOfRange)
FREDSING_DEFINE_ERROR(AliasedCoefficients)
FREDSING_DEFINE_ERROR(NotSimple)
FREDSING_DEFINE_ERROR(IllConditioned)
FREDSING_DEFINE_ERROR(DepthCapExceeded)
FREDSING_DEFINE_ERROR(VanishingScale)
FREDSING_DEFINE_ERROR(NoConvergence)
FREDSING_DEFINE_ERROR(DegenerateGradient)
FREDSING_DEFINE_ERROR(RankDeficient)
FREDSING_DEFINE_ERROR(ConfigParseError)

#undef FREDSING_DEFINE_ERROR

}  // namespace fredsing
