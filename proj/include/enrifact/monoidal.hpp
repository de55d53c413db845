// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_MONOIDAL_HPP
#define ENRIFACT_MONOIDAL_HPP

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <enrifact/fincat.hpp>

namespace enrifact {

/// Unvalidated structure tables for a strict symmetric monoidal closed
/// category.
struct RawMonoidal {
   RawCategory category;
   std::string unit;
   std::vector<std::array<std::string, 3>> tensor_obj;   // X, Y, X(x)Y
   std::vector<std::array<std::string, 3>> tensor_mor;   // f, g, f(x)g
   std::vector<std::array<std::string, 3>> symmetry;     // X, Y, s: X(x)Y -> Y(x)X
   std::vector<std::array<std::string, 3>> hom_obj;      // Y, Z, [Y,Z]
   std::vector<std::array<std::string, 5>> curry;        // X, Y, Z, h: X(x)Y -> Z, curry(h): X -> [Y,Z]
};

/// A strict symmetric monoidal closed structure on a FinCategory, used as the
/// base of enrichment V. Every axiom is verified exhaustively on construction.
class MonoidalClosedStructure {
public:
   static MonoidalClosedStructure validate(const RawMonoidal& raw);

   const FinCategory& base() const noexcept { return base_; }

   ObjId unit() const noexcept { return unit_; }
   ObjId tensor(ObjId x, ObjId y) const { return tensor_obj_[x * base_.num_objects() + y]; }
   MorId tensor_mor(MorId f, MorId g) const { return tensor_mor_[f * base_.num_morphisms() + g]; }
   MorId symmetry(ObjId x, ObjId y) const { return symmetry_[x * base_.num_objects() + y]; }
   /// Internal hom [y, z].
   ObjId hom(ObjId y, ObjId z) const { return hom_obj_[y * base_.num_objects() + z]; }

   /// h: x(x)y -> z  to  x -> [y, z].
   MorId curry(ObjId x, ObjId y, MorId h) const;
   /// k: x -> [y, z]  to  x(x)y -> z. The target z is explicit since
   /// distinct z may share an internal hom.
   MorId uncurry(ObjId x, ObjId y, ObjId z, MorId k) const;
   /// ev: [y,z](x)y -> z.
   MorId eval(ObjId y, ObjId z) const;

   /// For f: A'->A and g: B->B', the induced [A,B] -> [A',B'].
   MorId apply_hom(MorId f, MorId g) const;

   bool is_thin() const noexcept;

   RawMonoidal to_raw() const;

private:
   FinCategory base_;
   ObjId unit_ = no_id;
   std::vector<ObjId> tensor_obj_;
   std::vector<MorId> tensor_mor_;
   std::vector<MorId> symmetry_;
   std::vector<ObjId> hom_obj_;
   std::map<std::tuple<ObjId, ObjId, MorId>, MorId> curry_;     // (x, y, h) -> curry(h)
   std::map<std::tuple<ObjId, ObjId, ObjId, MorId>, MorId> uncurry_;   // (x, y, z, k) -> h

   void check_functorial() const;
   void check_strict() const;
   void check_symmetry() const;
   void check_closed() const;
};

/// A finite commutative quantale given as a poset with a tensor table.
struct QuantaleSpec {
   std::vector<std::string> carrier;
   /// Generating pairs x <= y; the order is their reflexive-transitive closure.
   std::vector<std::pair<std::string, std::string>> order;
   std::map<std::pair<std::string, std::string>, std::string> tensor;
   std::string unit;
};

/// Checks the quantale laws and renders the thin category with tensor,
/// symmetry, residual and currying tables. Throws NotCommutative,
/// NotAssociative, UnitViolation, NotMonotone, NotResiduated, NotPartialOrder.
RawMonoidal quantale_tables(const QuantaleSpec& spec);

/// quantale_tables followed by full validation.
MonoidalClosedStructure quantale_to_V(const QuantaleSpec& spec);

/// Chain quantale on n elements "0" < ... < "n-1"; tensor "min" or
/// "lukasiewicz" (i (x) j = max(0, i + j - (n-1))), unit the top.
QuantaleSpec quantale_chain(std::size_t n, const std::string& tensor);

/// Morphism ID of x <= y in a thin category rendered by this library.
std::string thin_arrow(const std::string& x, const std::string& y);

}  // namespace enrifact

#endif
