#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hochschild {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HOCHSCHILD_DEFINE_ERROR(Name)          \
  class Name : public Error {                  \
   public:                                     \
    using Error::Error;                        \
  };

HOCHSCHILD_DEFINE_ERROR(DimensionMismatch)
HOCHSCHILD_DEFINE_ERROR(NotUnital)
HOCHSCHILD_DEFINE_ERROR(NotAModule)
HOCHSCHILD_DEFINE_ERROR(ResourceLimit)
HOCHSCHILD_DEFINE_ERROR(ModuleNotAlgebra)
HOCHSCHILD_DEFINE_ERROR(BadElementIndex)
HOCHSCHILD_DEFINE_ERROR(InvalidGroupAction)
HOCHSCHILD_DEFINE_ERROR(ArityMismatch)
HOCHSCHILD_DEFINE_ERROR(VariableCountMismatch)
HOCHSCHILD_DEFINE_ERROR(NotACocycle)
HOCHSCHILD_DEFINE_ERROR(NoSolutionWithinBounds)
HOCHSCHILD_DEFINE_ERROR(OrderOutOfRange)
HOCHSCHILD_DEFINE_ERROR(NotAssociativeToOrder)
HOCHSCHILD_DEFINE_ERROR(NotAntisymmetric)
HOCHSCHILD_DEFINE_ERROR(JacobiFails)
HOCHSCHILD_DEFINE_ERROR(NotSubalgebra)
HOCHSCHILD_DEFINE_ERROR(NotAutomorphism)
HOCHSCHILD_DEFINE_ERROR(ParseError)
HOCHSCHILD_DEFINE_ERROR(SchemaError)

#undef HOCHSCHILD_DEFINE_ERROR

/// Raised by make_algebra; carries the basis triple (i, j, l) where
/// (e_i e_j) e_l != e_i (e_j e_l).
class NotAssociative : public Error {
 public:
  NotAssociative(std::size_t i, std::size_t j, std::size_t l)
      : Error("structure constants are not associative at basis triple (" + std::to_string(i) +
              ", " + std::to_string(j) + ", " + std::to_string(l) + ")"),
        i_(i), j_(j), l_(l) {}
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }
  std::size_t l() const { return l_; }

 private:
  std::size_t i_, j_, l_;
};

}  // namespace hochschild
