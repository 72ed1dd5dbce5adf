#pragma once

#include <stdexcept>
#include <string>

namespace padist {

// Every library failure carries a stable kind name so reports can key on it.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define PADIST_ERROR(Name)                                              \
  struct Name : Error {                                                 \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  }

PADIST_ERROR(PrecisionExhausted);
PADIST_ERROR(DivisionByZero);
PADIST_ERROR(NonUnit);
PADIST_ERROR(InvalidField);
PADIST_ERROR(InvalidLattice);
PADIST_ERROR(NotPowerful);
PADIST_ERROR(CounterexampleFound);
PADIST_ERROR(DegreeOverflow);
PADIST_ERROR(ZeroDistribution);
PADIST_ERROR(DegreeMismatch);
PADIST_ERROR(DimensionMismatch);
PADIST_ERROR(NonUnitLeading);
PADIST_ERROR(CriticalRadius);
PADIST_ERROR(UniqueAttainmentFailed);
PADIST_ERROR(InjectivityFailed);
PADIST_ERROR(HypothesisFailed);
PADIST_ERROR(ConditionFailed);
PADIST_ERROR(InvalidDelta);
PADIST_ERROR(InvalidRadius);
PADIST_ERROR(ParseError);
PADIST_ERROR(ConfigError);
PADIST_ERROR(CacheError);

#undef PADIST_ERROR

}  // namespace padist
