#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace parallax {

/// Base of every error raised by the library. `code()` is a stable identifier
/// (e.g. "UnknownSymbol") and `witness()` carries the offending data as
/// key/value text so front ends can report it verbatim.
class Error : public std::runtime_error {
 public:
  using Witness = std::map<std::string, std::string>;

  Error(std::string code, const std::string& message, Witness witness = {})
      : std::runtime_error(message), code_(std::move(code)), witness_(std::move(witness)) {}

  const std::string& code() const noexcept { return code_; }
  const Witness& witness() const noexcept { return witness_; }

 private:
  std::string code_;
  Witness witness_;
};

#define PARALLAX_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                    \
   public:                                                                       \
    explicit Name(const std::string& message, Witness witness = {})              \
        : Error(#Name, message, std::move(witness)) {}                           \
  };

// expr
PARALLAX_DEFINE_ERROR(SyntaxError)
PARALLAX_DEFINE_ERROR(UnknownSymbol)
PARALLAX_DEFINE_ERROR(DivisionByZeroPolynomial)
PARALLAX_DEFINE_ERROR(NonIntegrable)
PARALLAX_DEFINE_ERROR(NameClash)
PARALLAX_DEFINE_ERROR(TowerInsufficient)
// liealg
PARALLAX_DEFINE_ERROR(SingularMatrix)
PARALLAX_DEFINE_ERROR(NotADerivation)
PARALLAX_DEFINE_ERROR(NonCommutingAction)
PARALLAX_DEFINE_ERROR(DimensionMismatch)
// geometry / parallelism
PARALLAX_DEFINE_ERROR(ChartMismatch)
PARALLAX_DEFINE_ERROR(IndeterminatePullback)
PARALLAX_DEFINE_ERROR(NotClosed)
PARALLAX_DEFINE_ERROR(NonConstantCoefficients)
PARALLAX_DEFINE_ERROR(SingularFrame)
PARALLAX_DEFINE_ERROR(NonCommutingParallelisms)
// connection
PARALLAX_DEFINE_ERROR(InitialConditionMismatch)
// jets
PARALLAX_DEFINE_ERROR(OrderTooSmall)
PARALLAX_DEFINE_ERROR(EliminationFailure)
// galois
PARALLAX_DEFINE_ERROR(Undecidable)
PARALLAX_DEFINE_ERROR(UnsupportedInput)
// cli
PARALLAX_DEFINE_ERROR(SchemaError)

#undef PARALLAX_DEFINE_ERROR

}  // namespace parallax
