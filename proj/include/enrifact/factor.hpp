// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_FACTOR_HPP
#define ENRIFACT_FACTOR_HPP

#include <optional>
#include <string>
#include <vector>

#include <enrifact/ortho.hpp>

namespace enrifact {

struct Factorization {
   MorId e = no_id;
   MorId m = no_id;
};

/// Hypotheses of the wide-intersection construction for M: isos in M, M
/// closed under composition, V-pullbacks of M along anything exist and lie
/// in M, V-intersections of every family of M-morphisms into an object exist
/// and lie in M. Families are enumerated up to isomorphism of subobjects.
/// Reasons: HypothesisFailed(isos|i|ii|iii), InductionFailure.
Verdict intersection_hypotheses(const Workspace& ws, const MorphismClass& M);

/// g = m0 . e where m0 is the V-intersection of every M-morphism through
/// which g factors. Checks the hypotheses first and throws HypothesisFailed,
/// InductionFailure or IntersectionMissing. The result has m0 in M and e in
/// the left class of M.
Factorization factorize_via_intersection(const Workspace& ws, MorId g, const MorphismClass& M);

/// The same for every morphism, checking the hypotheses once.
std::vector<Factorization> factorize_all_via_intersection(const Workspace& ws, const MorphismClass& M);

struct FactorizationSystem {
   MorphismClass left;
   MorphismClass right;
   std::vector<Factorization> factorizer;   // indexed by morphism
   Mode mode = Mode::ordinary;
};

Json to_json(const FinCategory& c, const FactorizationSystem& s);

struct SystemCheck {
   Verdict verdict;
   std::optional<FactorizationSystem> system;   // present when the verdict holds
};

/// Iso closure of both classes, pairwise orthogonality in `mode`, and an
/// (E, M)-factorization of every morphism found by search. Reasons:
/// NotIsoClosed, NotOrthogonal, NoFactorization; holds with "FactorizationSystem".
SystemCheck check_factorization_system(const Workspace& ws, const MorphismClass& E, const MorphismClass& M, Mode mode);
Verdict is_factorization_system(const Workspace& ws, const MorphismClass& E, const MorphismClass& M, Mode mode);

/// Monos m with e orthogonal to m for every epi e (V-versions in enriched mode).
MorphismClass strong_mono_class(const Workspace& ws, Mode mode = Mode::enriched);
/// Epis e with e orthogonal to m for every mono m.
MorphismClass strong_epi_class(const Workspace& ws, Mode mode = Mode::enriched);

/// First morphism without a kernel pair that is a V-limit, or nullopt.
std::optional<MorId> missing_v_kernel_pair(const Workspace& ws);

struct CanonicalAttempt {
   std::string name;
   MorphismClass left;
   MorphismClass right;
   Verdict verdict;   // certification, or the obstruction
   std::optional<FactorizationSystem> system;
};

struct CanonicalReport {
   CanonicalAttempt epi_strong_mono;
   CanonicalAttempt strong_epi_mono;
   bool coincide = false;
};

CanonicalReport canonical_systems(const Workspace& ws);
Json to_json(const FinCategory& c, const CanonicalReport& r);

struct FWCReport {
   bool has_finite_v_limits = false;
   Json missing_limit;          // null when present
   bool has_strong_mono_v_intersections = false;
   Json missing_intersection;   // null when present
};

/// Finite V-limits over terminal, binary product, equalizer and pullback
/// shapes, and V-intersections of every family of V-strong-monos.
FWCReport check_fwc(const Workspace& ws);
Json to_json(const FWCReport& r);

}  // namespace enrifact

#endif
