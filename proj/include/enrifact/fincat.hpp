// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_FINCAT_HPP
#define ENRIFACT_FINCAT_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <enrifact/verdict.hpp>

namespace enrifact {

/// Dense index of an object inside one FinCategory. Indices follow the
/// bytewise order of the string IDs, so index order is ID order.
using ObjId = std::size_t;
/// Dense index of a morphism inside one FinCategory (ID-ordered as well).
using MorId = std::size_t;

inline constexpr std::size_t no_id = static_cast<std::size_t>(-1);

struct RawMorphism {
   std::string id;
   std::string dom;
   std::string cod;
};

/// Unvalidated category tables as they come out of a document.
struct RawCategory {
   std::vector<std::string> objects;
   std::vector<RawMorphism> morphisms;
   std::map<std::string, std::string> identities;
   /// Entries (g, f, g.f).
   std::vector<std::array<std::string, 3>> compose;
};

/// A finite category with a total composition table. Immutable once built;
/// all queries are const and safe to share between threads.
class FinCategory {
public:
   /// Checks every category axiom exhaustively and builds the indexed form.
   static FinCategory validate(const RawCategory& raw);

   std::size_t num_objects() const noexcept { return object_names_.size(); }
   std::size_t num_morphisms() const noexcept { return morphism_names_.size(); }

   const std::string& object_name(ObjId x) const { return object_names_.at(x); }
   const std::string& morphism_name(MorId f) const { return morphism_names_.at(f); }

   std::optional<ObjId> find_object(std::string_view id) const;
   std::optional<MorId> find_morphism(std::string_view id) const;
   /// Lookups that throw DanglingID.
   ObjId object(std::string_view id) const;
   MorId morphism(std::string_view id) const;

   ObjId dom(MorId f) const { return dom_[f]; }
   ObjId cod(MorId f) const { return cod_[f]; }
   MorId identity(ObjId x) const { return identity_[x]; }
   bool is_identity(MorId f) const { return identity_[dom_[f]] == f; }

   bool composable(MorId g, MorId f) const { return dom_[g] == cod_[f]; }
   /// g . f; the pair must be composable.
   MorId compose(MorId g, MorId f) const { return table_[g * num_morphisms() + f]; }
   MorId compose(MorId h, MorId g, MorId f) const { return compose(h, compose(g, f)); }

   /// Morphisms a -> b in ID order.
   std::span<const MorId> hom(ObjId a, ObjId b) const { return hom_[a * num_objects() + b]; }

   FinCategory opposite() const;
   RawCategory to_raw() const;

private:
   std::vector<std::string> object_names_;
   std::vector<std::string> morphism_names_;
   std::vector<ObjId> dom_, cod_;
   std::vector<MorId> identity_;
   std::vector<MorId> table_;
   std::vector<std::vector<MorId>> hom_;

   void build_homs();
};

struct MorphismFlags {
   bool mono = false;
   bool epi = false;
   bool iso = false;
   bool section = false;
   bool retraction = false;

   bool operator==(const MorphismFlags&) const = default;
};

MorphismFlags classify_morphism(const FinCategory& c, MorId f);
std::vector<MorphismFlags> classify_all(const FinCategory& c);
Json to_json(const MorphismFlags& flags);

/// Commuting square  h.f = k.g  with f: P->X, g: P->Y, h: X->Z, k: Y->Z.
struct Square {
   MorId f, g, h, k;
};

bool commutes(const FinCategory& c, const Square& sq);

/// Decides whether a commuting square is a pullback by enumerating every
/// competing cone. Throws NonCommutingSquare.
Verdict is_pullback_square(const FinCategory& c, const Square& sq);

/// A finite diagram: nodes labelled by objects (kept in node-ID order) and
/// edges labelled by morphisms between the node objects.
struct Diagram {
   struct Edge {
      std::size_t from;
      std::size_t to;
      MorId mor;
   };
   std::vector<std::string> nodes;
   std::vector<ObjId> objects;
   std::vector<Edge> edges;

   std::size_t size() const noexcept { return nodes.size(); }

   /// Node "c" is the common codomain, "m000".. the members.
   static Diagram wide_cospan(const FinCategory& c, ObjId codomain, std::span<const MorId> family);
   static Diagram cospan(const FinCategory& c, MorId f, MorId g);
   static Diagram parallel_pair(const FinCategory& c, MorId p, MorId q);
   static Diagram discrete(std::span<const ObjId> objects);

   /// Throws MalformedDiagram when nodes are unsorted/duplicated or edges are
   /// ill-typed.
   void check(const FinCategory& c) const;
};

Json to_json(const FinCategory& c, const Diagram& d);

struct Cone {
   ObjId apex = no_id;
   std::vector<MorId> legs;   // one per diagram node

   bool operator==(const Cone&) const = default;
};

Json to_json(const FinCategory& c, const Diagram& d, const Cone& cone);

bool is_cone(const FinCategory& c, const Diagram& d, const Cone& cone);

/// Calls visit(legs) for every cone with the given apex. Enumeration order is
/// unspecified; visit returns false to stop early.
void for_each_cone(const FinCategory& c, const Diagram& d, ObjId apex,
                   const std::function<bool(std::span<const MorId>)>& visit);
std::size_t count_cones(const FinCategory& c, const Diagram& d, ObjId apex);

/// Direct terminality check: every cone over every object factors through
/// `cone` exactly once. Counterexample names the object and competing cone.
Verdict is_limit_cone(const FinCategory& c, const Diagram& d, const Cone& cone);

/// Terminal cone with the least apex ID, then lexicographically least legs;
/// nullopt when the diagram has no limit inside this category.
std::optional<Cone> limit_cone(const FinCategory& c, const Diagram& d);

/// Limit of the cospan (f, f); legs are (to cod f, pi1, pi2).
struct KernelPair {
   ObjId apex;
   MorId pi1;
   MorId pi2;
};
std::optional<KernelPair> kernel_pair(const FinCategory& c, MorId f);

/// Mediating morphisms u: apex(from) -> apex(to) with to.leg . u = from.leg.
std::vector<MorId> mediators(const FinCategory& c, const Cone& from, const Cone& to);

}  // namespace enrifact

#endif
