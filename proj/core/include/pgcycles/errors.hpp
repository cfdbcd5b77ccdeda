#pragma once

#include <stdexcept>
#include <string>

namespace pgc {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PGC_DEFINE_ERROR(NAME)                                       \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& what) : Error(what) {}      \
    }

PGC_DEFINE_ERROR(NonPrime);
PGC_DEFINE_ERROR(NotPrimePower);
PGC_DEFINE_ERROR(SizeExceeded);
PGC_DEFINE_ERROR(DivisionByZero);
PGC_DEFINE_ERROR(InvalidField);
PGC_DEFINE_ERROR(ZeroVector);
PGC_DEFINE_ERROR(EqualPoints);
PGC_DEFINE_ERROR(WrongDimension);
PGC_DEFINE_ERROR(NotInSubspace);
PGC_DEFINE_ERROR(DimensionMismatch);
PGC_DEFINE_ERROR(FlagInvalid);
PGC_DEFINE_ERROR(NoValidMove);
PGC_DEFINE_ERROR(OutOfRange);
PGC_DEFINE_ERROR(SearchExhausted);
PGC_DEFINE_ERROR(CaseViolation);
PGC_DEFINE_ERROR(NotInCycle);
PGC_DEFINE_ERROR(BudgetExceeded);
PGC_DEFINE_ERROR(MalformedCertificate);
PGC_DEFINE_ERROR(InternalError);

#undef PGC_DEFINE_ERROR

}  // namespace pgc
