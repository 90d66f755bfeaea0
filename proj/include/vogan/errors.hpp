#pragma once

#include <stdexcept>
#include <string>

namespace vogan {

// Base class for all domain errors.  Every error carries a stable name that
// the CLI prints on the diagnostic stream, so callers can match on it.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define VOGAN_DEFINE_ERROR(NAME)                              \
  class NAME : public Error {                                 \
   public:                                                    \
    explicit NAME(const std::string& what = "")               \
        : Error(#NAME, what.empty() ? #NAME : what) {}        \
  }

VOGAN_DEFINE_ERROR(RankOutOfRange);
VOGAN_DEFINE_ERROR(InvalidPainting);
VOGAN_DEFINE_ERROR(NotAnAutomorphism);
VOGAN_DEFINE_ERROR(PaintedMovedVertex);
VOGAN_DEFINE_ERROR(VertexNotPainted);
VOGAN_DEFINE_ERROR(R0Disallowed);
VOGAN_DEFINE_ERROR(NonCommuting);
VOGAN_DEFINE_ERROR(TooLarge);
VOGAN_DEFINE_ERROR(InvalidLabel);
VOGAN_DEFINE_ERROR(ConventionMismatch);
VOGAN_DEFINE_ERROR(WindowOverflow);
VOGAN_DEFINE_ERROR(UnsupportedType);
VOGAN_DEFINE_ERROR(LiftFailed);
VOGAN_DEFINE_ERROR(EigenvalueMismatch);
VOGAN_DEFINE_ERROR(NotARealRoot);
VOGAN_DEFINE_ERROR(NotRootHomogeneous);
VOGAN_DEFINE_ERROR(ParseError);

#undef VOGAN_DEFINE_ERROR

}  // namespace vogan
