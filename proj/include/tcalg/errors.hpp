#pragma once
#include <stdexcept>
#include <string>

namespace tcalg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define TCALG_ERROR(Name)                      \
  struct Name : Error {                        \
    explicit Name(const std::string& w)        \
        : Error(std::string(#Name ": ") + w) {} \
  };

TCALG_ERROR(MalformedScalar)
TCALG_ERROR(DivByZero)
TCALG_ERROR(MalformedSpec)
TCALG_ERROR(TypeMismatch)
TCALG_ERROR(NotSupported)
TCALG_ERROR(SyntaxError)
TCALG_ERROR(UnboundName)
TCALG_ERROR(InvalidTwist)
TCALG_ERROR(NotAGroup)
TCALG_ERROR(NotInvertible)
TCALG_ERROR(DegenerateAlgebra)
TCALG_ERROR(CheckGFailed)
TCALG_ERROR(InternalInconsistency)

#undef TCALG_ERROR

}  // namespace tcalg
