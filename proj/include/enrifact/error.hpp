// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_ERROR_HPP
#define ENRIFACT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace enrifact {

/// Machine-readable failure codes. Every exception thrown by the engine
/// carries exactly one of these; the C API maps them onto integer codes.
enum class ErrorCode {
   SyntaxError,
   SchemaError,
   DuplicateID,
   DanglingID,
   MissingComposite,
   NonComposableEntry,
   TypeMismatch,
   IdentityViolation,
   AssociativityViolation,
   InterchangeViolation,
   UnitViolation,
   SymmetryNotIso,
   CurryNotBijective,
   NaturalityViolation,
   NotCommutative,
   NotAssociative,
   NotMonotone,
   NotResiduated,
   NotPartialOrder,
   EnrichedAssocViolation,
   EnrichedUnitViolation,
   DanglingVRef,
   NotIso,
   NonCommutingSquare,
   MalformedDiagram,
   NotACone,
   FamilyNotMono,
   HypothesisFailed,
   InductionFailure,
   IntersectionMissing,
   DirectiveError,
   UsageError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
   Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

   ErrorCode code() const noexcept { return code_; }
   const std::string& detail() const noexcept { return detail_; }

private:
   ErrorCode code_;
   std::string detail_;
};

}  // namespace enrifact

#endif
