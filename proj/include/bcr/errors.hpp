#pragma once

#include <stdexcept>
#include <string>

namespace bcr {

// Base of every error raised by the library. Each subclass corresponds to a
// named failure mode of an operation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BCR_DEFINE_ERROR(Name)           \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

BCR_DEFINE_ERROR(ParseError);
BCR_DEFINE_ERROR(InvalidInstance);
BCR_DEFINE_ERROR(VertexMismatch);
BCR_DEFINE_ERROR(Disconnected);
BCR_DEFINE_ERROR(UnknownArc);
BCR_DEFINE_ERROR(UnknownEdge);
BCR_DEFINE_ERROR(LimitInfeasible);
BCR_DEFINE_ERROR(InfeasibleInput);
BCR_DEFINE_ERROR(NotMetric);
BCR_DEFINE_ERROR(TooSmall);
BCR_DEFINE_ERROR(TooLarge);
BCR_DEFINE_ERROR(NoSupport);
BCR_DEFINE_ERROR(NotHalfIntegral);
BCR_DEFINE_ERROR(NotSteinerTree);
BCR_DEFINE_ERROR(FlowShortfall);
BCR_DEFINE_ERROR(Infeasible);
BCR_DEFINE_ERROR(GenerationFailed);

#undef BCR_DEFINE_ERROR

}  // namespace bcr
