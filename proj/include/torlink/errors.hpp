#pragma once

#include <stdexcept>
#include <string>

namespace torlink {

// Base of every error raised by the library. The CLI maps subclasses onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TORLINK_DEFINE_ERROR(Name)        \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

TORLINK_DEFINE_ERROR(SingularMatrix)
TORLINK_DEFINE_ERROR(NonSymmetric)
TORLINK_DEFINE_ERROR(GroupMismatch)
TORLINK_DEFINE_ERROR(UnsupportedScope)
TORLINK_DEFINE_ERROR(InvalidData)
TORLINK_DEFINE_ERROR(LengthMismatch)
TORLINK_DEFINE_ERROR(NotPairwiseIsotropic)
TORLINK_DEFINE_ERROR(NotIsotropicSubgroup)
TORLINK_DEFINE_ERROR(InvalidParameters)
TORLINK_DEFINE_ERROR(DimensionMismatch)
TORLINK_DEFINE_ERROR(ChunkOverlap)
TORLINK_DEFINE_ERROR(ParseError)
TORLINK_DEFINE_ERROR(ValidationError)
TORLINK_DEFINE_ERROR(DegenerateForm)

#undef TORLINK_DEFINE_ERROR

}  // namespace torlink
