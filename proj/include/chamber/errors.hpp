#pragma once

#include <stdexcept>
#include <string>

namespace chamber {

/// Base class for every error raised by the library. The `kind()` string is
/// stable and is what the CLI prints in its JSON reports.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  [[nodiscard]] const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define CHAMBER_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name, what) {}             \
  }

CHAMBER_DEFINE_ERROR(ZeroVector);
CHAMBER_DEFINE_ERROR(DimensionMismatch);
CHAMBER_DEFINE_ERROR(NotFullDimensional);
CHAMBER_DEFINE_ERROR(NonConvexSupport);
CHAMBER_DEFINE_ERROR(OverlapError);
CHAMBER_DEFINE_ERROR(RayNotInSupport);
CHAMBER_DEFINE_ERROR(InvalidFan);
CHAMBER_DEFINE_ERROR(InfiniteGroup);
CHAMBER_DEFINE_ERROR(NotFiniteType);
CHAMBER_DEFINE_ERROR(ClosureBudgetExceeded);
CHAMBER_DEFINE_ERROR(NotAdjoint);
CHAMBER_DEFINE_ERROR(NotStable);
CHAMBER_DEFINE_ERROR(NotCovering);
CHAMBER_DEFINE_ERROR(EquivarianceViolation);
CHAMBER_DEFINE_ERROR(NotPointed);
CHAMBER_DEFINE_ERROR(NotAFan);
CHAMBER_DEFINE_ERROR(NotComplete);
CHAMBER_DEFINE_ERROR(NotUnipotent);
CHAMBER_DEFINE_ERROR(NoRayOffAxis);
CHAMBER_DEFINE_ERROR(BoundExceeded);
CHAMBER_DEFINE_ERROR(SearchExhausted);
CHAMBER_DEFINE_ERROR(ParseError);

#undef CHAMBER_DEFINE_ERROR

} // namespace chamber
