// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_ORTHO_HPP
#define ENRIFACT_ORTHO_HPP

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <enrifact/enriched.hpp>

namespace enrifact {

enum class Mode { ordinary, enriched };
enum class Side { left, right };

std::string_view to_string(Mode mode) noexcept;
std::string_view to_string(Side side) noexcept;

/// A set of underlying morphisms, stored as a membership mask in ID order.
struct MorphismClass {
   std::vector<bool> members;
   std::string provenance;

   static MorphismClass none(std::size_t n, std::string provenance);
   static MorphismClass all(std::size_t n, std::string provenance);
   /// Throws DanglingID on unknown IDs.
   static MorphismClass from_ids(const FinCategory& c, std::span<const std::string> ids, std::string provenance);

   bool contains(MorId f) const { return members[f]; }
   std::size_t size() const;
   std::vector<MorId> ids() const;
   bool subset_of(const MorphismClass& other) const;

   /// Equality compares members only.
   bool operator==(const MorphismClass& other) const { return members == other.members; }
};

Json to_json(const FinCategory& c, const MorphismClass& k);

/// Unique diagonal fillers for every commuting square v.e = m.u. The witness
/// is the filler table [top u, bottom v, filler w]; the counterexample is the
/// first square (bottom-major ID order) with zero or several fillers.
Verdict is_orthogonal(const FinCategory& c, MorId e, MorId m);

/// The hom square B(A2,B1) -> B(A2,B2), B(A1,B1) -> B(A1,B2) is a pullback in V.
Verdict is_v_orthogonal(const EnrichedCategory& b, MorId e, MorId m);

/// Positive value of ENRIFACT_THREADS, or the hardware concurrency when the
/// variable is unset. Throws UsageError on a malformed value.
std::size_t worker_count();

/// Shared, lazily computed facts about one enriched category: morphism
/// predicates and the orthogonality relation in both modes. Every cache is
/// filled at most once and is safe to read from several threads.
class Workspace {
public:
   explicit Workspace(std::shared_ptr<const EnrichedCategory> b);
   ~Workspace();
   Workspace(Workspace&&) noexcept;
   Workspace& operator=(Workspace&&) noexcept;

   const EnrichedCategory& category() const noexcept { return *b_; }
   std::shared_ptr<const EnrichedCategory> shared() const noexcept { return b_; }
   const FinCategory& underlying() const noexcept { return b_->underlying(); }
   std::size_t size() const noexcept { return b_->underlying().num_morphisms(); }

   const std::vector<MorphismFlags>& flags() const;
   const std::vector<VFlags>& v_flags() const;
   bool orthogonal(MorId e, MorId m, Mode mode) const;

   MorphismClass isos() const;
   MorphismClass monos() const;
   MorphismClass epis() const;
   MorphismClass v_monos() const;
   MorphismClass v_epis() const;
   MorphismClass v_regular_monos() const;
   MorphismClass v_regular_epis() const;
   MorphismClass all() const { return MorphismClass::all(size(), "predicate(all)"); }

private:
   struct Cache;
   std::shared_ptr<const EnrichedCategory> b_;
   std::unique_ptr<Cache> cache_;
};

/// E^{down}: morphisms m with e orthogonal to m for every e in E.
MorphismClass right_class(const Workspace& ws, const MorphismClass& e, Mode mode);
/// M^{up}: morphisms e with e orthogonal to m for every m in M.
MorphismClass left_class(const Workspace& ws, const MorphismClass& m, Mode mode);

struct Prefactorization {
   MorphismClass left;
   MorphismClass right;
};

/// side = right: (H^{down up}, H^{down}); side = left: (H^{up}, H^{up down}).
Prefactorization prefactorization_closure(const Workspace& ws, const MorphismClass& seed, Side side, Mode mode);

/// Both fixed-point equations E^{down} = M and M^{up} = E. The counterexample
/// names the first morphism on the wrong side and an orthogonality witness.
Verdict is_prefactorization_system(const Workspace& ws, const MorphismClass& e, const MorphismClass& m, Mode mode);

}  // namespace enrifact

#endif
