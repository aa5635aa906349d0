#pragma once

#include <stdexcept>
#include <string>

namespace envcert {

/// Base of every library error. `kind()` is a stable identifier used by the
/// CLI and the python module to map failures onto exit codes / exceptions.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ENVCERT_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(#Name, what) {}          \
    }

ENVCERT_DEFINE_ERROR(ParseError);
ENVCERT_DEFINE_ERROR(DimensionMismatch);
ENVCERT_DEFINE_ERROR(RankDeficient);
ENVCERT_DEFINE_ERROR(Inconsistent);
ENVCERT_DEFINE_ERROR(NotFinite);
ENVCERT_DEFINE_ERROR(DegreeCapExceeded);
ENVCERT_DEFINE_ERROR(DomainMismatch);
ENVCERT_DEFINE_ERROR(NoValidRemainder);
ENVCERT_DEFINE_ERROR(InvalidTM);
ENVCERT_DEFINE_ERROR(DtTooLarge);
ENVCERT_DEFINE_ERROR(NumericalFailure);
ENVCERT_DEFINE_ERROR(Mismatch);
ENVCERT_DEFINE_ERROR(Malformed);

#undef ENVCERT_DEFINE_ERROR

}  // namespace envcert
