#pragma once

#include <stdexcept>
#include <string>

namespace coopreg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COOPREG_ERROR(Name)            \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

COOPREG_ERROR(NonSquare);
COOPREG_ERROR(NonConformable);
COOPREG_ERROR(DimensionMismatch);
COOPREG_ERROR(SpectraOverlap);
COOPREG_ERROR(NotHurwitz);
COOPREG_ERROR(NotStabilizable);
COOPREG_ERROR(NotDetectable);
COOPREG_ERROR(NoStabilizingSolution);
COOPREG_ERROR(DegenerateNode);
COOPREG_ERROR(MissingMeasurement);
COOPREG_ERROR(MissingGains);
COOPREG_ERROR(NonFiniteState);
COOPREG_ERROR(Unbounded);
COOPREG_ERROR(ParseError);
COOPREG_ERROR(ValidationError);

#undef COOPREG_ERROR

}  // namespace coopreg
