#pragma once

#include <stdexcept>
#include <string>

namespace mti {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define MTI_DEFINE_ERROR(NAME)                                                 \
  class NAME : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

// Battery loading.
MTI_DEFINE_ERROR(ParseError);
MTI_DEFINE_ERROR(SchemaError);
MTI_DEFINE_ERROR(ValidationError);
MTI_DEFINE_ERROR(IoError);

// Endpoint client.
MTI_DEFINE_ERROR(TransportError);
MTI_DEFINE_ERROR(ProtocolError);
MTI_DEFINE_ERROR(EmptyResponseError);
MTI_DEFINE_ERROR(ReplayMissError);

// Scorers.
MTI_DEFINE_ERROR(BothEmptyError);
MTI_DEFINE_ERROR(EmptyAfterFilterError);
MTI_DEFINE_ERROR(TooFewResponsesError);
MTI_DEFINE_ERROR(OutOfRangeError);
MTI_DEFINE_ERROR(NoRatingFoundError);
MTI_DEFINE_ERROR(BaselineUnclearError);
MTI_DEFINE_ERROR(ZeroBaselineError);

// Profiles and statistics.
MTI_DEFINE_ERROR(MissingFacetError);
MTI_DEFINE_ERROR(ConstantSeriesError);
MTI_DEFINE_ERROR(LengthMismatchError);
MTI_DEFINE_ERROR(VersionMismatchError);

#undef MTI_DEFINE_ERROR

} // namespace mti
