#pragma once

#include <stdexcept>
#include <string>

namespace leadlag {

// Base class for all toolkit errors so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define LEADLAG_DEFINE_ERROR(Name)                                  \
  struct Name : Error {                                             \
    explicit Name(const std::string& what) : Error(what) {}         \
  }

// Series construction and alignment.
LEADLAG_DEFINE_ERROR(EmptyIntersection);
LEADLAG_DEFINE_ERROR(TooShort);
LEADLAG_DEFINE_ERROR(KTooLarge);

// Statistical kernels.
LEADLAG_DEFINE_ERROR(ZeroVariance);
LEADLAG_DEFINE_ERROR(RankDeficient);

// Cross correlation and batch analyses.
LEADLAG_DEFINE_ERROR(SeriesTooShort);
LEADLAG_DEFINE_ERROR(TooFewPoints);
LEADLAG_DEFINE_ERROR(TooFewEntities);
LEADLAG_DEFINE_ERROR(RedrawExhausted);

// Synthetic generators.
LEADLAG_DEFINE_ERROR(NonStationaryConfig);

// Ingestion.
LEADLAG_DEFINE_ERROR(ParseError);
LEADLAG_DEFINE_ERROR(DuplicateDate);
LEADLAG_DEFINE_ERROR(NegativeValue);
LEADLAG_DEFINE_ERROR(EmptyList);
LEADLAG_DEFINE_ERROR(IoError);

// User behaviour statistics.
LEADLAG_DEFINE_ERROR(EmptyWindow);
LEADLAG_DEFINE_ERROR(NoSuchTicker);

// Reporting.
LEADLAG_DEFINE_ERROR(ConstantSeries);

// Catch-all for violated call preconditions.
LEADLAG_DEFINE_ERROR(InvalidArgument);

#undef LEADLAG_DEFINE_ERROR

}  // namespace leadlag
