// SPDX-License-Identifier: Apache-2.0

#include <enrifact/error.hpp>
#include <enrifact/verdict.hpp>

namespace enrifact {

std::string_view to_string(ErrorCode code) noexcept {
   switch(code) {
      case ErrorCode::SyntaxError: return "SyntaxError";
      case ErrorCode::SchemaError: return "SchemaError";
      case ErrorCode::DuplicateID: return "DuplicateID";
      case ErrorCode::DanglingID: return "DanglingID";
      case ErrorCode::MissingComposite: return "MissingComposite";
      case ErrorCode::NonComposableEntry: return "NonComposableEntry";
      case ErrorCode::TypeMismatch: return "TypeMismatch";
      case ErrorCode::IdentityViolation: return "IdentityViolation";
      case ErrorCode::AssociativityViolation: return "AssociativityViolation";
      case ErrorCode::InterchangeViolation: return "InterchangeViolation";
      case ErrorCode::UnitViolation: return "UnitViolation";
      case ErrorCode::SymmetryNotIso: return "SymmetryNotIso";
      case ErrorCode::CurryNotBijective: return "CurryNotBijective";
      case ErrorCode::NaturalityViolation: return "NaturalityViolation";
      case ErrorCode::NotCommutative: return "NotCommutative";
      case ErrorCode::NotAssociative: return "NotAssociative";
      case ErrorCode::NotMonotone: return "NotMonotone";
      case ErrorCode::NotResiduated: return "NotResiduated";
      case ErrorCode::NotPartialOrder: return "NotPartialOrder";
      case ErrorCode::EnrichedAssocViolation: return "EnrichedAssocViolation";
      case ErrorCode::EnrichedUnitViolation: return "EnrichedUnitViolation";
      case ErrorCode::DanglingVRef: return "DanglingVRef";
      case ErrorCode::NotIso: return "NotIso";
      case ErrorCode::NonCommutingSquare: return "NonCommutingSquare";
      case ErrorCode::MalformedDiagram: return "MalformedDiagram";
      case ErrorCode::NotACone: return "NotACone";
      case ErrorCode::FamilyNotMono: return "FamilyNotMono";
      case ErrorCode::HypothesisFailed: return "HypothesisFailed";
      case ErrorCode::InductionFailure: return "InductionFailure";
      case ErrorCode::IntersectionMissing: return "IntersectionMissing";
      case ErrorCode::DirectiveError: return "DirectiveError";
      case ErrorCode::UsageError: return "UsageError";
   }
   return "Unknown";
}

Json to_json(const Verdict& v) {
   Json out = {{"holds", v.holds}, {"reason", v.reason}};
   if(!v.witness.is_null()) {
      out["witness"] = v.witness;
   }
   if(!v.counterexample.is_null()) {
      out["counterexample"] = v.counterexample;
   }
   return out;
}

}  // namespace enrifact
