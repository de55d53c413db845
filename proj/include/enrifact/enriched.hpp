// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_ENRICHED_HPP
#define ENRIFACT_ENRICHED_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <enrifact/fincat.hpp>
#include <enrifact/monoidal.hpp>

namespace enrifact {

enum class Backend { table, finset };

/// Tensor (V (x) A) or cotensor ([V, B]) claim over a table-backed V. For
/// every free object X the rows give phi_X and its inverse psi_X:
///   tensor:   B(T, X) -> [V, B(A, X)]
///   cotensor: B(X, C) -> [V, B(X, B)]
struct RawTableTensor {
   std::string v;
   std::string object;   // A for tensors, B for cotensors
   std::string result;   // T or C
   std::vector<std::array<std::string, 3>> iso;   // X, phi_X, psi_X
};

/// Tensor/cotensor claim over the native finite-set backend, where V-objects
/// are cardinals n. A tensor n.A is presented by n coprojections A -> T, a
/// cotensor [n, B] by n projections C -> B.
struct RawSetTensor {
   std::size_t v = 0;
   std::string object;
   std::string result;
   std::vector<std::string> maps;
};

/// Element data of a concrete category of finite sets: each object is a set
/// {0..size-1}, each morphism a function.
struct ConcreteSets {
   std::map<std::string, std::size_t> sizes;
   std::map<std::string, std::vector<std::size_t>> maps;

   bool operator==(const ConcreteSets&) const = default;
};

struct RawTableEnriched {
   RawMonoidal values;
   std::vector<std::string> objects;
   std::vector<std::array<std::string, 3>> hom;    // A, B, V-object
   std::vector<std::array<std::string, 4>> comp;   // A, B, C, V-morphism hom(B,C)(x)hom(A,B) -> hom(A,C)
   std::vector<std::array<std::string, 2>> ids;    // A, V-morphism I -> hom(A,A)
   std::vector<RawTableTensor> tensors;
   std::vector<RawTableTensor> cotensors;
};

struct RawSetEnriched {
   RawCategory category;
   std::optional<std::size_t> max_size;   // set for finset(N) instances
   bool dual = false;                     // opposite of the concrete data
   std::optional<ConcreteSets> concrete;
   std::vector<RawSetTensor> tensors;
   std::vector<RawSetTensor> cotensors;
};

using RawEnriched = std::variant<RawTableEnriched, RawSetEnriched>;

/// Validated (co)tensor data. `maps` (finset) or `phi`/`psi` (table, one per
/// free object in object order) carry the representing isomorphism.
struct TensorEntry {
   std::string v;
   ObjId object = no_id;
   ObjId result = no_id;
   std::vector<MorId> maps;
   std::vector<MorId> phi;
   std::vector<MorId> psi;
};

struct TensorData {
   std::vector<TensorEntry> tensors;
   std::vector<TensorEntry> cotensors;
};

/// A category enriched over either a table-backed V or native finite sets.
/// The underlying ordinary category is built and validated on construction.
class EnrichedCategory {
public:
   static EnrichedCategory validate(const RawEnriched& raw);
   /// Regard an ordinary category as enriched in finite sets.
   static EnrichedCategory from_category(const FinCategory& c);

   Backend backend() const noexcept { return backend_; }
   const FinCategory& underlying() const noexcept { return underlying_; }
   const FinCategory& underlying_op() const noexcept { return underlying_op_; }
   std::size_t num_objects() const noexcept { return underlying_.num_objects(); }

   /// Table backend only.
   const MonoidalClosedStructure& values() const;
   ObjId hom_object(ObjId a, ObjId b) const { return hom_[a * n_ + b]; }
   MorId comp(ObjId a, ObjId b, ObjId c) const { return comp_[(a * n_ + b) * n_ + c]; }
   MorId unit_point(ObjId a) const { return ids_[a]; }
   /// The V-morphism I -> hom(A, B) behind an underlying morphism.
   MorId point(MorId f) const { return points_[f]; }
   std::optional<MorId> from_point(ObjId a, ObjId b, MorId p) const;
   /// Ordinary predicates of every V-morphism, in V's morphism order.
   const std::vector<MorphismFlags>& value_flags() const noexcept { return value_flags_; }

   /// Finset backend only.
   std::optional<std::size_t> max_size() const noexcept { return max_size_; }
   bool dual() const noexcept { return dual_; }
   const std::optional<ConcreteSets>& concrete() const noexcept { return concrete_; }

   const TensorData& tensor_data() const noexcept { return tensors_; }
   /// V-objects against which (co)tensor coverage is reported.
   std::vector<std::string> coverage_universe() const;

   EnrichedCategory opposite() const;
   RawEnriched to_raw() const;

private:
   Backend backend_ = Backend::finset;
   FinCategory underlying_;
   FinCategory underlying_op_;
   std::shared_ptr<const MonoidalClosedStructure> values_;
   std::size_t n_ = 0;
   std::vector<ObjId> hom_;
   std::vector<MorId> comp_;
   std::vector<MorId> ids_;
   std::vector<MorId> points_;
   std::vector<MorphismFlags> value_flags_;
   std::map<std::tuple<ObjId, ObjId, MorId>, MorId> by_point_;
   std::optional<std::size_t> max_size_;
   bool dual_ = false;
   std::optional<ConcreteSets> concrete_;
   TensorData tensors_;

   static EnrichedCategory validate_table(const RawTableEnriched& raw);
   static EnrichedCategory validate_set(const RawSetEnriched& raw);
};

enum class Variance { co, contra };

/// A function between two literal hom-sets (finset backend).
struct SetMap {
   std::vector<MorId> domain;
   std::vector<MorId> codomain;
   std::vector<std::size_t> at;   // at[i] indexes codomain

   bool injective() const;
};

/// B(A, f) or B(f, A): a V-morphism (table backend) or a set map (finset).
using HomMap = std::variant<MorId, SetMap>;

/// Covariant: B(A, f): B(A, X) -> B(A, Y). Contravariant: B(f, A): B(Y, A) -> B(X, A).
HomMap hom_action(const EnrichedCategory& b, ObjId a, MorId f, Variance variance);

/// True when the hom action is a monomorphism in V.
bool is_mono_in_values(const EnrichedCategory& b, const HomMap& map);

struct VFlags {
   bool v_mono = false;
   bool v_epi = false;
   bool v_regular_mono = false;
   bool v_regular_epi = false;

   bool operator==(const VFlags&) const = default;
};

VFlags v_classify(const EnrichedCategory& b, MorId f);
Json to_json(const VFlags& flags);

bool is_v_mono(const EnrichedCategory& b, MorId f);
bool is_v_epi(const EnrichedCategory& b, MorId f);

/// Holds iff the cone is an ordinary limit and every B(A, -) carries it to a
/// limit in V. Throws NotACone.
Verdict is_v_limit(const EnrichedCategory& b, const Diagram& d, const Cone& cone);
/// Dual: `cocone` is a cone over `d` in the opposite of the underlying
/// category and every B(-, A) carries it to a limit in V.
Verdict is_v_colimit(const EnrichedCategory& b, const Diagram& d, const Cone& cocone);

/// Decides the hom square of (e, m) is a pullback in V; the square has
/// corners B(A2,B1) -> B(A2,B2), B(A1,B1) -> B(A1,B2).
Verdict hom_square_is_pullback(const EnrichedCategory& b, MorId e, MorId m);

struct Intersection {
   enum class Status { found, absent, not_v_limit };
   Status status = Status::absent;
   std::optional<Cone> cone;   // limit cone over Diagram::wide_cospan when present
   MorId morphism = no_id;     // the induced m: apex -> codomain
   Verdict v_limit;
};

/// Wide fibre product of v-monos into `codomain`, checked to be a V-limit.
/// The empty family yields the identity. Throws FamilyNotMono.
Intersection v_intersection(const EnrichedCategory& b, ObjId codomain, std::span<const MorId> family);

/// Verifies every claimed (co)tensor isomorphism. Reasons: NotIso,
/// NaturalityViolation; the witness lists covered and uncovered pairs.
Verdict check_tensor_data(const EnrichedCategory& b, const TensorData& data);

/// V (x) e between covered tensors, or nullopt when either side is uncovered.
std::optional<MorId> tensor_morphism(const EnrichedCategory& b, const std::string& v, MorId e);
/// [V, m] between covered cotensors, or nullopt.
std::optional<MorId> cotensor_morphism(const EnrichedCategory& b, const std::string& v, MorId m);

/// Literal finite-set categories FinSet restricted to the given sizes; objects
/// are named by size, morphisms "a>b:v0v1..". `max_size` is recorded when the
/// sizes are exactly 0..N. Tensors and cotensors are generated wherever the
/// product or power lands on a present size.
RawSetEnriched finset_category(const std::vector<std::size_t>& sizes);

/// Underlying ID for the point p: I -> hom(A, B); thin V drops the point.
std::string enriched_arrow(const std::string& a, const std::string& b, const std::string& point, bool thin);

}  // namespace enrifact

#endif
