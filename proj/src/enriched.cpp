// SPDX-License-Identifier: Apache-2.0

#include <enrifact/enriched.hpp>
#include <enrifact/error.hpp>

#include <algorithm>
#include <set>

#include "plan.hpp"

namespace enrifact {

namespace {

std::string quote(std::string_view s) {
   return "'" + std::string(s) + "'";
}

std::size_t position(std::span<const MorId> sorted, MorId f) {
   auto it = std::lower_bound(sorted.begin(), sorted.end(), f);
   if(it == sorted.end() || *it != f) {
      return no_id;
   }
   return static_cast<std::size_t>(it - sorted.begin());
}

std::size_t power(std::size_t base, std::size_t exp) {
   std::size_t r = 1;
   for(std::size_t i = 0; i < exp; ++i) {
      r *= base;
   }
   return r;
}

ErrorCode code_of(const std::string& reason) {
   return reason == "NaturalityViolation" ? ErrorCode::NaturalityViolation : ErrorCode::NotIso;
}

const TensorEntry* find_entry(const std::vector<TensorEntry>& entries, const std::string& v, ObjId object) {
   for(const auto& e : entries) {
      if(e.v == v && e.object == object) {
         return &e;
      }
   }
   return nullptr;
}

void sort_entries(std::vector<TensorEntry>& entries, const FinCategory& c, const char* kind) {
   std::sort(entries.begin(), entries.end(),
             [](const TensorEntry& a, const TensorEntry& b) { return std::tie(a.v, a.object) < std::tie(b.v, b.object); });
   for(std::size_t i = 1; i < entries.size(); ++i) {
      if(entries[i].v == entries[i - 1].v && entries[i].object == entries[i - 1].object) {
         throw Error(ErrorCode::DuplicateID, std::string(kind) + " (" + entries[i].v + ", " +
                                                c.object_name(entries[i].object) + ") declared twice");
      }
   }
}

}  // namespace

std::string enriched_arrow(const std::string& a, const std::string& b, const std::string& point, bool thin) {
   return thin ? a + "->" + b : a + "->" + b + ":" + point;
}

// ---------------------------------------------------------------------------
// construction

EnrichedCategory EnrichedCategory::validate(const RawEnriched& raw) {
   if(const auto* t = std::get_if<RawTableEnriched>(&raw)) {
      return validate_table(*t);
   }
   return validate_set(std::get<RawSetEnriched>(raw));
}

EnrichedCategory EnrichedCategory::validate_table(const RawTableEnriched& raw) {
   EnrichedCategory b;
   b.backend_ = Backend::table;
   b.values_ = std::make_shared<const MonoidalClosedStructure>(MonoidalClosedStructure::validate(raw.values));
   const MonoidalClosedStructure& V = *b.values_;
   const FinCategory& vc = V.base();
   b.value_flags_ = classify_all(vc);

   auto vobj = [&](const std::string& id, const std::string& ctx) {
      if(auto x = vc.find_object(id)) {
         return *x;
      }
      throw Error(ErrorCode::DanglingVRef, ctx + " references unknown V-object " + quote(id));
   };
   auto vmor = [&](const std::string& id, const std::string& ctx) {
      if(auto f = vc.find_morphism(id)) {
         return *f;
      }
      throw Error(ErrorCode::DanglingVRef, ctx + " references unknown V-morphism " + quote(id));
   };

   std::vector<std::string> objects = raw.objects;
   std::sort(objects.begin(), objects.end());
   for(std::size_t i = 1; i < objects.size(); ++i) {
      if(objects[i] == objects[i - 1]) {
         throw Error(ErrorCode::DuplicateID, "object " + quote(objects[i]));
      }
   }
   const std::size_t n = objects.size();
   b.n_ = n;
   auto obj = [&](const std::string& id, const std::string& ctx) {
      auto it = std::lower_bound(objects.begin(), objects.end(), id);
      if(it == objects.end() || *it != id) {
         throw Error(ErrorCode::DanglingID, ctx + " references unknown object " + quote(id));
      }
      return static_cast<ObjId>(it - objects.begin());
   };

   b.hom_.assign(n * n, no_id);
   for(const auto& [as, bs, xs] : raw.hom) {
      const std::string ctx = "hom(" + as + ", " + bs + ")";
      auto& slot = b.hom_[obj(as, ctx) * n + obj(bs, ctx)];
      if(slot != no_id) {
         throw Error(ErrorCode::DuplicateID, ctx + " given twice");
      }
      slot = vobj(xs, ctx);
   }
   for(ObjId x = 0; x < n; ++x) {
      for(ObjId y = 0; y < n; ++y) {
         if(b.hom_[x * n + y] == no_id) {
            throw Error(ErrorCode::SchemaError, "no hom-object for (" + objects[x] + ", " + objects[y] + ")");
         }
      }
   }

   b.ids_.assign(n, no_id);
   for(const auto& [as, ps] : raw.ids) {
      const std::string ctx = "identity element of " + quote(as);
      const ObjId a = obj(as, ctx);
      const MorId p = vmor(ps, ctx);
      if(b.ids_[a] != no_id) {
         throw Error(ErrorCode::DuplicateID, ctx + " given twice");
      }
      if(vc.dom(p) != V.unit() || vc.cod(p) != b.hom_object(a, a)) {
         throw Error(ErrorCode::EnrichedUnitViolation, ctx + " " + quote(ps) + " is not a point of hom(" + as + ", " + as + ")");
      }
      b.ids_[a] = p;
   }
   for(ObjId a = 0; a < n; ++a) {
      if(b.ids_[a] == no_id) {
         throw Error(ErrorCode::EnrichedUnitViolation, "object " + quote(objects[a]) + " has no identity element");
      }
   }

   b.comp_.assign(n * n * n, no_id);
   for(const auto& [as, bs, cs, ms] : raw.comp) {
      const std::string ctx = "composition (" + as + ", " + bs + ", " + cs + ")";
      const ObjId a = obj(as, ctx);
      const ObjId bb = obj(bs, ctx);
      const ObjId c = obj(cs, ctx);
      const MorId m = vmor(ms, ctx);
      auto& slot = b.comp_[(a * n + bb) * n + c];
      if(slot != no_id) {
         throw Error(ErrorCode::DuplicateID, ctx + " given twice");
      }
      if(vc.dom(m) != V.tensor(b.hom_object(bb, c), b.hom_object(a, bb)) || vc.cod(m) != b.hom_object(a, c)) {
         throw Error(ErrorCode::EnrichedAssocViolation, ctx + " uses " + quote(ms) + " of the wrong type");
      }
      slot = m;
   }
   for(ObjId a = 0; a < n; ++a) {
      for(ObjId x = 0; x < n; ++x) {
         for(ObjId c = 0; c < n; ++c) {
            if(b.comp(a, x, c) == no_id) {
               throw Error(ErrorCode::EnrichedAssocViolation,
                           "no composition for (" + objects[a] + ", " + objects[x] + ", " + objects[c] + ")");
            }
         }
      }
   }

   for(ObjId a = 0; a < n; ++a) {
      for(ObjId x = 0; x < n; ++x) {
         const MorId id_ax = vc.identity(b.hom_object(a, x));
         const MorId left = vc.compose(b.comp(a, x, x), V.tensor_mor(b.ids_[x], id_ax));
         const MorId right = vc.compose(b.comp(a, a, x), V.tensor_mor(id_ax, b.ids_[a]));
         if(left != id_ax || right != id_ax) {
            throw Error(ErrorCode::EnrichedUnitViolation,
                        "unit law fails on hom(" + objects[a] + ", " + objects[x] + ")");
         }
         for(ObjId c = 0; c < n; ++c) {
            for(ObjId d = 0; d < n; ++d) {
               const MorId lhs =
                  vc.compose(b.comp(a, x, d), V.tensor_mor(b.comp(x, c, d), vc.identity(b.hom_object(a, x))));
               const MorId rhs =
                  vc.compose(b.comp(a, c, d), V.tensor_mor(vc.identity(b.hom_object(c, d)), b.comp(a, x, c)));
               if(lhs != rhs) {
                  throw Error(ErrorCode::EnrichedAssocViolation, "associativity fails on (" + objects[a] + ", " +
                                                                    objects[x] + ", " + objects[c] + ", " + objects[d] + ")");
               }
            }
         }
      }
   }

   // underlying category: points I -> hom(A, B)
   const bool thin = V.is_thin();
   RawCategory u;
   u.objects = objects;
   std::map<std::tuple<ObjId, ObjId, MorId>, std::string> names;
   for(ObjId a = 0; a < n; ++a) {
      for(ObjId x = 0; x < n; ++x) {
         for(MorId p : vc.hom(V.unit(), b.hom_object(a, x))) {
            std::string name = enriched_arrow(objects[a], objects[x], vc.morphism_name(p), thin);
            u.morphisms.push_back({name, objects[a], objects[x]});
            names[{a, x, p}] = std::move(name);
         }
      }
   }
   for(ObjId a = 0; a < n; ++a) {
      u.identities[objects[a]] = names.at({a, a, b.ids_[a]});
   }
   for(const auto& [gk, gname] : names) {
      const auto [x, c, q] = gk;
      for(const auto& [fk, fname] : names) {
         const auto [a, x2, p] = fk;
         if(x2 != x) {
            continue;
         }
         const MorId r = vc.compose(b.comp(a, x, c), V.tensor_mor(q, p));
         u.compose.push_back({gname, fname, names.at({a, c, r})});
      }
   }
   b.underlying_ = FinCategory::validate(u);
   b.underlying_op_ = b.underlying_.opposite();
   b.points_.assign(b.underlying_.num_morphisms(), no_id);
   for(const auto& [key, name] : names) {
      const MorId f = b.underlying_.morphism(name);
      b.points_[f] = std::get<2>(key);
      b.by_point_[key] = f;
   }

   auto convert = [&](const std::vector<RawTableTensor>& entries, bool tensor) {
      const char* kind = tensor ? "tensor" : "cotensor";
      std::vector<TensorEntry> out;
      for(const auto& e : entries) {
         const std::string ctx = std::string(kind) + " (" + e.v + ", " + e.object + ")";
         TensorEntry t;
         const ObjId v = vobj(e.v, ctx);
         t.v = e.v;
         t.object = obj(e.object, ctx);
         t.result = obj(e.result, ctx);
         t.phi.assign(n, no_id);
         t.psi.assign(n, no_id);
         for(const auto& [xs, phis, psis] : e.iso) {
            const ObjId x = obj(xs, ctx);
            if(t.phi[x] != no_id) {
               throw Error(ErrorCode::DuplicateID, ctx + " row for " + quote(xs) + " given twice");
            }
            t.phi[x] = vmor(phis, ctx);
            t.psi[x] = vmor(psis, ctx);
            const ObjId lhs = tensor ? b.hom_object(t.result, x) : b.hom_object(x, t.result);
            const ObjId rhs = V.hom(v, tensor ? b.hom_object(t.object, x) : b.hom_object(x, t.object));
            if(vc.dom(t.phi[x]) != lhs || vc.cod(t.phi[x]) != rhs || vc.dom(t.psi[x]) != rhs || vc.cod(t.psi[x]) != lhs) {
               throw Error(ErrorCode::TypeMismatch, ctx + " row for " + quote(xs) + " is ill-typed");
            }
         }
         for(ObjId x = 0; x < n; ++x) {
            if(t.phi[x] == no_id) {
               throw Error(ErrorCode::SchemaError, ctx + " has no row for " + quote(objects[x]));
            }
         }
         out.push_back(std::move(t));
      }
      sort_entries(out, b.underlying_, kind);
      return out;
   };
   b.tensors_.tensors = convert(raw.tensors, true);
   b.tensors_.cotensors = convert(raw.cotensors, false);
   const Verdict tv = check_tensor_data(b, b.tensors_);
   if(!tv) {
      throw Error(code_of(tv.reason), tv.counterexample.dump());
   }
   return b;
}

EnrichedCategory EnrichedCategory::validate_set(const RawSetEnriched& raw) {
   EnrichedCategory b;
   b.backend_ = Backend::finset;
   b.underlying_ = FinCategory::validate(raw.category);
   b.underlying_op_ = b.underlying_.opposite();
   b.max_size_ = raw.max_size;
   b.dual_ = raw.dual;
   b.concrete_ = raw.concrete;
   const FinCategory& c = b.underlying_;

   if(b.concrete_) {
      const ConcreteSets& cs = *b.concrete_;
      if(cs.sizes.size() != c.num_objects() || cs.maps.size() != c.num_morphisms()) {
         throw Error(ErrorCode::SchemaError, "concrete data must cover every object and morphism exactly once");
      }
      std::vector<std::size_t> size(c.num_objects());
      for(const auto& [name, s] : cs.sizes) {
         size[c.object(name)] = s;
      }
      std::vector<const std::vector<std::size_t>*> fn(c.num_morphisms());
      for(const auto& [name, values] : cs.maps) {
         const MorId f = c.morphism(name);
         // a dual instance stores each arrow A -> B as a function B -> A
         const std::size_t from = size[b.dual_ ? c.cod(f) : c.dom(f)];
         const std::size_t to = size[b.dual_ ? c.dom(f) : c.cod(f)];
         if(values.size() != from || std::any_of(values.begin(), values.end(), [&](std::size_t v) { return v >= to; })) {
            throw Error(ErrorCode::SchemaError, "concrete function of " + quote(name) + " is ill-typed");
         }
         fn[f] = &values;
      }
      for(ObjId x = 0; x < c.num_objects(); ++x) {
         const auto& id = *fn[c.identity(x)];
         for(std::size_t i = 0; i < id.size(); ++i) {
            if(id[i] != i) {
               throw Error(ErrorCode::SchemaError, "concrete identity of " + quote(c.object_name(x)) + " is not the identity");
            }
         }
      }
      for(MorId g = 0; g < c.num_morphisms(); ++g) {
         for(MorId f = 0; f < c.num_morphisms(); ++f) {
            if(!c.composable(g, f)) {
               continue;
            }
            const auto& first = b.dual_ ? *fn[g] : *fn[f];
            const auto& second = b.dual_ ? *fn[f] : *fn[g];
            const auto& gf = *fn[c.compose(g, f)];
            for(std::size_t i = 0; i < first.size(); ++i) {
               if(gf[i] != second[first[i]]) {
                  throw Error(ErrorCode::SchemaError, "concrete functions disagree with compose(" + c.morphism_name(g) +
                                                         ", " + c.morphism_name(f) + ")");
               }
            }
         }
      }
   }

   auto convert = [&](const std::vector<RawSetTensor>& entries, bool tensor) {
      const char* kind = tensor ? "tensor" : "cotensor";
      std::vector<TensorEntry> out;
      for(const auto& e : entries) {
         TensorEntry t;
         t.v = std::to_string(e.v);
         const std::string ctx = std::string(kind) + " (" + t.v + ", " + e.object + ")";
         t.object = c.object(e.object);
         t.result = c.object(e.result);
         if(e.maps.size() != e.v) {
            throw Error(ErrorCode::TypeMismatch, ctx + " needs exactly " + t.v + " maps");
         }
         for(const auto& m : e.maps) {
            const MorId f = c.morphism(m);
            const bool typed = tensor ? (c.dom(f) == t.object && c.cod(f) == t.result)
                                      : (c.dom(f) == t.result && c.cod(f) == t.object);
            if(!typed) {
               throw Error(ErrorCode::TypeMismatch, ctx + " map " + quote(m) + " is ill-typed");
            }
            t.maps.push_back(f);
         }
         out.push_back(std::move(t));
      }
      sort_entries(out, c, kind);
      return out;
   };
   b.tensors_.tensors = convert(raw.tensors, true);
   b.tensors_.cotensors = convert(raw.cotensors, false);
   const Verdict tv = check_tensor_data(b, b.tensors_);
   if(!tv) {
      throw Error(code_of(tv.reason), tv.counterexample.dump());
   }
   return b;
}

EnrichedCategory EnrichedCategory::from_category(const FinCategory& c) {
   EnrichedCategory b;
   b.backend_ = Backend::finset;
   b.underlying_ = c;
   b.underlying_op_ = c.opposite();
   return b;
}

const MonoidalClosedStructure& EnrichedCategory::values() const {
   if(!values_) {
      throw Error(ErrorCode::UsageError, "the finite-set backend has no value table");
   }
   return *values_;
}

std::optional<MorId> EnrichedCategory::from_point(ObjId a, ObjId b, MorId p) const {
   auto it = by_point_.find({a, b, p});
   if(it == by_point_.end()) {
      return std::nullopt;
   }
   return it->second;
}

std::vector<std::string> EnrichedCategory::coverage_universe() const {
   std::vector<std::string> out;
   if(backend_ == Backend::table) {
      for(ObjId v = 0; v < values_->base().num_objects(); ++v) {
         out.push_back(values_->base().object_name(v));
      }
      return out;
   }
   std::set<std::size_t> sizes;
   if(max_size_) {
      for(std::size_t k = 0; k <= *max_size_; ++k) {
         sizes.insert(k);
      }
   }
   for(const auto* list : {&tensors_.tensors, &tensors_.cotensors}) {
      for(const auto& e : *list) {
         sizes.insert(std::stoul(e.v));
      }
   }
   for(std::size_t k : sizes) {
      out.push_back(std::to_string(k));
   }
   return out;
}

RawEnriched EnrichedCategory::to_raw() const {
   const FinCategory& c = underlying_;
   if(backend_ == Backend::finset) {
      RawSetEnriched raw;
      raw.category = c.to_raw();
      raw.max_size = max_size_;
      raw.dual = dual_;
      raw.concrete = concrete_;
      auto convert = [&](const std::vector<TensorEntry>& entries) {
         std::vector<RawSetTensor> out;
         for(const auto& e : entries) {
            RawSetTensor t{std::stoul(e.v), c.object_name(e.object), c.object_name(e.result), {}};
            for(MorId f : e.maps) {
               t.maps.push_back(c.morphism_name(f));
            }
            out.push_back(std::move(t));
         }
         return out;
      };
      raw.tensors = convert(tensors_.tensors);
      raw.cotensors = convert(tensors_.cotensors);
      return raw;
   }

   const FinCategory& vc = values_->base();
   const std::size_t n = num_objects();
   RawTableEnriched raw;
   raw.values = values_->to_raw();
   for(ObjId a = 0; a < n; ++a) {
      raw.objects.push_back(c.object_name(a));
      raw.ids.push_back({c.object_name(a), vc.morphism_name(ids_[a])});
      for(ObjId x = 0; x < n; ++x) {
         raw.hom.push_back({c.object_name(a), c.object_name(x), vc.object_name(hom_object(a, x))});
         for(ObjId y = 0; y < n; ++y) {
            raw.comp.push_back({c.object_name(a), c.object_name(x), c.object_name(y), vc.morphism_name(comp(a, x, y))});
         }
      }
   }
   auto convert = [&](const std::vector<TensorEntry>& entries) {
      std::vector<RawTableTensor> out;
      for(const auto& e : entries) {
         RawTableTensor t{e.v, c.object_name(e.object), c.object_name(e.result), {}};
         for(ObjId x = 0; x < n; ++x) {
            t.iso.push_back({c.object_name(x), vc.morphism_name(e.phi[x]), vc.morphism_name(e.psi[x])});
         }
         out.push_back(std::move(t));
      }
      return out;
   };
   raw.tensors = convert(tensors_.tensors);
   raw.cotensors = convert(tensors_.cotensors);
   return raw;
}

EnrichedCategory EnrichedCategory::opposite() const {
   RawEnriched raw = to_raw();
   if(auto* s = std::get_if<RawSetEnriched>(&raw)) {
      s->category = underlying_op_.to_raw();
      s->dual = !s->dual;
      std::swap(s->tensors, s->cotensors);
      return validate_set(*s);
   }
   auto& t = std::get<RawTableEnriched>(raw);
   const FinCategory& c = underlying_;
   const FinCategory& vc = values_->base();
   const std::size_t n = num_objects();
   t.hom.clear();
   t.comp.clear();
   for(ObjId a = 0; a < n; ++a) {
      for(ObjId x = 0; x < n; ++x) {
         t.hom.push_back({c.object_name(a), c.object_name(x), vc.object_name(hom_object(x, a))});
         for(ObjId y = 0; y < n; ++y) {
            // hom(y,x) (x) hom(x,a) -> hom(y,a), precomposed with the symmetry
            const MorId m = vc.compose(comp(y, x, a), values_->symmetry(hom_object(y, x), hom_object(x, a)));
            t.comp.push_back({c.object_name(a), c.object_name(x), c.object_name(y), vc.morphism_name(m)});
         }
      }
   }
   std::swap(t.tensors, t.cotensors);
   return validate_table(t);
}

// ---------------------------------------------------------------------------
// hom actions and V-predicates

bool SetMap::injective() const {
   std::vector<bool> hit(codomain.size(), false);
   for(std::size_t i : at) {
      if(hit[i]) {
         return false;
      }
      hit[i] = true;
   }
   return true;
}

HomMap hom_action(const EnrichedCategory& b, ObjId a, MorId f, Variance variance) {
   const FinCategory& c = b.underlying();
   const ObjId x = c.dom(f);
   const ObjId y = c.cod(f);
   if(b.backend() == Backend::table) {
      const MonoidalClosedStructure& V = b.values();
      const FinCategory& vc = V.base();
      if(variance == Variance::co) {
         return vc.compose(b.comp(a, x, y), V.tensor_mor(b.point(f), vc.identity(b.hom_object(a, x))));
      }
      return vc.compose(b.comp(x, y, a), V.tensor_mor(vc.identity(b.hom_object(y, a)), b.point(f)));
   }
   SetMap m;
   if(variance == Variance::co) {
      m.domain.assign(c.hom(a, x).begin(), c.hom(a, x).end());
      m.codomain.assign(c.hom(a, y).begin(), c.hom(a, y).end());
      for(MorId u : m.domain) {
         m.at.push_back(position(m.codomain, c.compose(f, u)));
      }
   } else {
      m.domain.assign(c.hom(y, a).begin(), c.hom(y, a).end());
      m.codomain.assign(c.hom(x, a).begin(), c.hom(x, a).end());
      for(MorId u : m.domain) {
         m.at.push_back(position(m.codomain, c.compose(u, f)));
      }
   }
   return m;
}

bool is_mono_in_values(const EnrichedCategory& b, const HomMap& map) {
   if(const auto* m = std::get_if<MorId>(&map)) {
      return b.value_flags()[*m].mono;
   }
   return std::get<SetMap>(map).injective();
}

bool is_v_mono(const EnrichedCategory& b, MorId f) {
   for(ObjId a = 0; a < b.num_objects(); ++a) {
      if(!is_mono_in_values(b, hom_action(b, a, f, Variance::co))) {
         return false;
      }
   }
   return true;
}

bool is_v_epi(const EnrichedCategory& b, MorId f) {
   for(ObjId a = 0; a < b.num_objects(); ++a) {
      if(!is_mono_in_values(b, hom_action(b, a, f, Variance::contra))) {
         return false;
      }
   }
   return true;
}

VFlags v_classify(const EnrichedCategory& b, MorId f) {
   const FinCategory& c = b.underlying();
   const FinCategory& op = b.underlying_op();
   VFlags flags;
   flags.v_mono = is_v_mono(b, f);
   flags.v_epi = is_v_epi(b, f);
   if(flags.v_mono) {
      const ObjId y = c.cod(f);
      for(ObjId z = 0; z < c.num_objects() && !flags.v_regular_mono; ++z) {
         const auto maps = c.hom(y, z);
         for(std::size_t i = 0; i < maps.size() && !flags.v_regular_mono; ++i) {
            for(std::size_t j = i; j < maps.size(); ++j) {
               const MorId pf = c.compose(maps[i], f);
               if(pf != c.compose(maps[j], f)) {
                  continue;
               }
               const Diagram d = Diagram::parallel_pair(c, maps[i], maps[j]);
               if(is_v_limit(b, d, Cone{c.dom(f), {f, pf}}).holds) {
                  flags.v_regular_mono = true;
                  break;
               }
            }
         }
      }
   }
   if(flags.v_epi) {
      const ObjId x = c.dom(f);
      for(ObjId z = 0; z < c.num_objects() && !flags.v_regular_epi; ++z) {
         const auto maps = c.hom(z, x);
         for(std::size_t i = 0; i < maps.size() && !flags.v_regular_epi; ++i) {
            for(std::size_t j = i; j < maps.size(); ++j) {
               const MorId fp = c.compose(f, maps[i]);
               if(fp != c.compose(f, maps[j])) {
                  continue;
               }
               const Diagram d = Diagram::parallel_pair(op, maps[i], maps[j]);
               if(is_v_colimit(b, d, Cone{c.cod(f), {f, fp}}).holds) {
                  flags.v_regular_epi = true;
                  break;
               }
            }
         }
      }
   }
   return flags;
}

Json to_json(const VFlags& flags) {
   Json out = Json::array();
   if(flags.v_epi) out.push_back("v-epi");
   if(flags.v_mono) out.push_back("v-mono");
   if(flags.v_regular_epi) out.push_back("v-regular-epi");
   if(flags.v_regular_mono) out.push_back("v-regular-mono");
   return out;
}

// ---------------------------------------------------------------------------
// V-limits

namespace {

struct SetEdge {
   std::size_t from;
   std::size_t to;
   const std::vector<std::size_t>* at;
};

struct SetLimitFailure {
   std::vector<std::size_t> family;
   std::vector<std::size_t> preimages;
};

/// Does the apex set biject onto the compatible families of the set diagram?
/// Returns the least offending family otherwise.
std::optional<SetLimitFailure> set_limit_failure(const std::vector<std::size_t>& sizes, const std::vector<SetEdge>& edges,
                                                 std::size_t apex_size, const std::vector<const std::vector<std::size_t>*>& legs) {
   std::map<std::vector<std::size_t>, std::vector<std::size_t>> images;
   for(std::size_t s = 0; s < apex_size; ++s) {
      std::vector<std::size_t> fam(legs.size());
      for(std::size_t i = 0; i < legs.size(); ++i) {
         fam[i] = (*legs[i])[s];
      }
      images[fam].push_back(s);
   }

   std::vector<detail::PlanEdge> pe;
   for(const auto& e : edges) {
      pe.push_back({e.from, e.to});
   }
   const auto plan = detail::plan_assignment(sizes.size(), pe);
   std::vector<std::size_t> val(sizes.size(), 0);
   std::optional<SetLimitFailure> worst;

   auto visit = [&] {
      auto it = images.find(val);
      const std::size_t count = it == images.end() ? 0 : it->second.size();
      if(count != 1 && (!worst || val < worst->family)) {
         worst = SetLimitFailure{val, it == images.end() ? std::vector<std::size_t>{} : it->second};
      }
   };
   auto step = [&](auto&& self, std::size_t pos) -> void {
      if(pos == plan.order.size()) {
         visit();
         return;
      }
      const std::size_t node = plan.order[pos];
      auto place = [&](std::size_t x) {
         val[node] = x;
         for(std::size_t i : plan.checks[pos]) {
            if((*edges[i].at)[val[edges[i].from]] != val[edges[i].to]) {
               return;
            }
         }
         self(self, pos + 1);
      };
      if(const auto& i = plan.forced_by[pos]) {
         place((*edges[*i].at)[val[edges[*i].from]]);
         return;
      }
      for(std::size_t x = 0; x < sizes[node]; ++x) {
         place(x);
      }
   };
   step(step, 0);
   // families reached by the apex but violating compatibility cannot occur for a cone
   return worst;
}

Verdict v_limit_impl(const EnrichedCategory& b, const FinCategory& ord, const Diagram& d, const Cone& cone,
                     Variance variance) {
   const Verdict ordinary = is_limit_cone(ord, d, cone);
   if(!ordinary) {
      return Verdict::fail("NotOrdinaryLimit", {{"ordinary", ordinary.counterexample}, {"reason", ordinary.reason}});
   }
   const FinCategory& c = b.underlying();
   auto image = [&](ObjId a, ObjId x) { return variance == Variance::co ? b.hom_object(a, x) : b.hom_object(x, a); };

   for(ObjId a = 0; a < b.num_objects(); ++a) {
      if(b.backend() == Backend::table) {
         const FinCategory& vc = b.values().base();
         Diagram vd;
         vd.nodes = d.nodes;
         for(ObjId x : d.objects) {
            vd.objects.push_back(image(a, x));
         }
         for(const auto& e : d.edges) {
            vd.edges.push_back({e.from, e.to, std::get<MorId>(hom_action(b, a, e.mor, variance))});
         }
         Cone vcone{image(a, cone.apex), {}};
         for(MorId leg : cone.legs) {
            vcone.legs.push_back(std::get<MorId>(hom_action(b, a, leg, variance)));
         }
         const Verdict v = is_limit_cone(vc, vd, vcone);
         if(!v) {
            return Verdict::fail("NotPreserved", {{"object", c.object_name(a)}, {"values", v.counterexample}});
         }
         continue;
      }

      std::vector<SetMap> edge_maps;
      std::vector<SetMap> leg_maps;
      for(const auto& e : d.edges) {
         edge_maps.push_back(std::get<SetMap>(hom_action(b, a, e.mor, variance)));
      }
      for(MorId leg : cone.legs) {
         leg_maps.push_back(std::get<SetMap>(hom_action(b, a, leg, variance)));
      }
      std::vector<std::size_t> sizes;
      std::vector<std::span<const MorId>> elements;
      for(ObjId x : d.objects) {
         elements.push_back(variance == Variance::co ? c.hom(a, x) : c.hom(x, a));
         sizes.push_back(elements.back().size());
      }
      std::vector<SetEdge> edges;
      for(std::size_t i = 0; i < d.edges.size(); ++i) {
         edges.push_back({d.edges[i].from, d.edges[i].to, &edge_maps[i].at});
      }
      std::vector<const std::vector<std::size_t>*> legs;
      for(const auto& m : leg_maps) {
         legs.push_back(&m.at);
      }
      const auto apex = variance == Variance::co ? c.hom(a, cone.apex) : c.hom(cone.apex, a);
      if(auto bad = set_limit_failure(sizes, edges, apex.size(), legs)) {
         Json family = Json::object();
         for(std::size_t i = 0; i < d.size(); ++i) {
            family[d.nodes[i]] = c.morphism_name(elements[i][bad->family[i]]);
         }
         Json pre = Json::array();
         for(std::size_t s : bad->preimages) {
            pre.push_back(c.morphism_name(apex[s]));
         }
         return Verdict::fail("NotPreserved", {{"object", c.object_name(a)}, {"family", family}, {"preimages", pre}});
      }
   }
   return Verdict::pass("VLimit", to_json(ord, d, cone));
}

}  // namespace

Verdict is_v_limit(const EnrichedCategory& b, const Diagram& d, const Cone& cone) {
   return v_limit_impl(b, b.underlying(), d, cone, Variance::co);
}

Verdict is_v_colimit(const EnrichedCategory& b, const Diagram& d, const Cone& cocone) {
   return v_limit_impl(b, b.underlying_op(), d, cocone, Variance::contra);
}

Verdict hom_square_is_pullback(const EnrichedCategory& b, MorId e, MorId m) {
   const FinCategory& c = b.underlying();
   const ObjId a1 = c.dom(e);
   const ObjId a2 = c.cod(e);
   const ObjId b1 = c.dom(m);
   const ObjId b2 = c.cod(m);
   if(b.backend() == Backend::table) {
      const Square sq{std::get<MorId>(hom_action(b, a2, m, Variance::co)), std::get<MorId>(hom_action(b, b1, e, Variance::contra)),
                      std::get<MorId>(hom_action(b, b2, e, Variance::contra)), std::get<MorId>(hom_action(b, a1, m, Variance::co))};
      const Verdict v = is_pullback_square(b.values().base(), sq);
      if(!v) {
         return Verdict::fail(v.reason, {{"values", v.counterexample}});
      }
      return Verdict::pass("Pullback");
   }
   std::map<std::pair<MorId, MorId>, std::vector<MorId>> fillers;
   for(MorId w : c.hom(a2, b1)) {
      fillers[{c.compose(m, w), c.compose(w, e)}].push_back(w);
   }
   for(MorId v : c.hom(a2, b2)) {
      for(MorId u : c.hom(a1, b1)) {
         if(c.compose(v, e) != c.compose(m, u)) {
            continue;
         }
         auto it = fillers.find({v, u});
         const std::size_t count = it == fillers.end() ? 0 : it->second.size();
         if(count != 1) {
            Json fs = Json::array();
            if(it != fillers.end()) {
               for(MorId w : it->second) fs.push_back(c.morphism_name(w));
            }
            return Verdict::fail(count == 0 ? "NoMediator" : "ManyMediators",
                                 {{"square", {{"top", c.morphism_name(u)}, {"bottom", c.morphism_name(v)}}}, {"fillers", fs}});
         }
      }
   }
   return Verdict::pass("Pullback");
}

Intersection v_intersection(const EnrichedCategory& b, ObjId codomain, std::span<const MorId> family) {
   const FinCategory& c = b.underlying();
   for(MorId f : family) {
      if(c.cod(f) != codomain || !is_v_mono(b, f)) {
         throw Error(ErrorCode::FamilyNotMono, "member " + quote(c.morphism_name(f)) + " is not a V-mono into " +
                                                  quote(c.object_name(codomain)));
      }
   }
   Intersection out;
   if(family.empty()) {
      out.status = Intersection::Status::found;
      out.cone = Cone{codomain, {c.identity(codomain)}};
      out.morphism = c.identity(codomain);
      out.v_limit = Verdict::pass("VLimit");
      return out;
   }
   const Diagram d = Diagram::wide_cospan(c, codomain, family);
   out.cone = limit_cone(c, d);
   if(!out.cone) {
      out.status = Intersection::Status::absent;
      out.v_limit = Verdict::fail("NoLimit", {{"diagram", to_json(c, d)}});
      return out;
   }
   out.morphism = out.cone->legs[0];
   out.v_limit = is_v_limit(b, d, *out.cone);
   out.status = out.v_limit.holds ? Intersection::Status::found : Intersection::Status::not_v_limit;
   return out;
}

// ---------------------------------------------------------------------------
// tensors and cotensors

Verdict check_tensor_data(const EnrichedCategory& b, const TensorData& data) {
   const FinCategory& c = b.underlying();
   const std::size_t n = b.num_objects();

   auto fail = [&](const char* reason, const char* kind, const TensorEntry& e, ObjId x, std::optional<MorId> g) {
      Json cex = {{"kind", kind}, {"v", e.v}, {"object", c.object_name(e.object)}, {"free", c.object_name(x)}};
      if(g) {
         cex["along"] = c.morphism_name(*g);
      }
      return Verdict::fail(reason, cex);
   };

   for(int pass = 0; pass < 2; ++pass) {
      const bool tensor = pass == 0;
      const char* kind = tensor ? "tensor" : "cotensor";
      for(const auto& e : tensor ? data.tensors : data.cotensors) {
         if(b.backend() == Backend::table) {
            const MonoidalClosedStructure& V = b.values();
            const FinCategory& vc = V.base();
            const MorId id_v = vc.identity(vc.object(e.v));
            for(ObjId x = 0; x < n; ++x) {
               const MorId phi = e.phi[x];
               const MorId psi = e.psi[x];
               if(!vc.composable(psi, phi) || !vc.composable(phi, psi) || vc.compose(psi, phi) != vc.identity(vc.dom(phi)) ||
                  vc.compose(phi, psi) != vc.identity(vc.dom(psi))) {
                  return fail("NotIso", kind, e, x, std::nullopt);
               }
            }
            for(MorId g = 0; g < c.num_morphisms(); ++g) {
               // tensor: natural in X along g: X -> X'; cotensor: along g: X' -> X
               const ObjId from = tensor ? c.dom(g) : c.cod(g);
               const ObjId to = tensor ? c.cod(g) : c.dom(g);
               const Variance var = tensor ? Variance::co : Variance::contra;
               const MorId lhs = vc.compose(V.apply_hom(id_v, std::get<MorId>(hom_action(b, e.object, g, var))), e.phi[from]);
               const MorId rhs = vc.compose(e.phi[to], std::get<MorId>(hom_action(b, e.result, g, var)));
               if(lhs != rhs) {
                  return fail("NaturalityViolation", kind, e, from, g);
               }
            }
            continue;
         }
         const std::size_t k = std::stoul(e.v);
         for(ObjId x = 0; x < n; ++x) {
            const auto outer = tensor ? c.hom(e.result, x) : c.hom(x, e.result);
            const auto inner = tensor ? c.hom(e.object, x) : c.hom(x, e.object);
            std::set<std::vector<MorId>> seen;
            bool injective = true;
            for(MorId h : outer) {
               std::vector<MorId> tuple;
               for(MorId m : e.maps) {
                  tuple.push_back(tensor ? c.compose(h, m) : c.compose(m, h));
               }
               injective = injective && seen.insert(std::move(tuple)).second;
            }
            if(!injective || outer.size() != power(inner.size(), k)) {
               return fail("NotIso", kind, e, x, std::nullopt);
            }
         }
      }
   }

   Json covered = {{"tensors", Json::array()}, {"cotensors", Json::array()}};
   Json uncovered = {{"tensors", Json::array()}, {"cotensors", Json::array()}};
   for(int pass = 0; pass < 2; ++pass) {
      const auto& entries = pass == 0 ? data.tensors : data.cotensors;
      const char* key = pass == 0 ? "tensors" : "cotensors";
      for(const auto& e : entries) {
         covered[key].push_back(Json::array({e.v, c.object_name(e.object), c.object_name(e.result)}));
      }
      for(const auto& v : b.coverage_universe()) {
         for(ObjId a = 0; a < n; ++a) {
            if(!find_entry(entries, v, a)) {
               uncovered[key].push_back(Json::array({v, c.object_name(a)}));
            }
         }
      }
   }
   return Verdict::pass("TensorsValid", {{"covered", covered}, {"uncovered", uncovered}});
}

std::optional<MorId> tensor_morphism(const EnrichedCategory& b, const std::string& v, MorId e) {
   const FinCategory& c = b.underlying();
   const TensorEntry* t1 = find_entry(b.tensor_data().tensors, v, c.dom(e));
   const TensorEntry* t2 = find_entry(b.tensor_data().tensors, v, c.cod(e));
   if(!t1 || !t2) {
      return std::nullopt;
   }
   if(b.backend() == Backend::table) {
      const MonoidalClosedStructure& V = b.values();
      const FinCategory& vc = V.base();
      const ObjId x = t2->result;
      // transport id of T2 through phi2, restrict along e, and pull back through psi1
      const MorId point = vc.compose(
         t1->psi[x], vc.compose(V.apply_hom(vc.identity(vc.object(v)), std::get<MorId>(hom_action(b, x, e, Variance::contra))),
                                vc.compose(t2->phi[x], b.point(c.identity(x)))));
      return b.from_point(t1->result, x, point);
   }
   for(MorId u : c.hom(t1->result, t2->result)) {
      bool ok = true;
      for(std::size_t i = 0; i < t1->maps.size() && ok; ++i) {
         ok = c.compose(u, t1->maps[i]) == c.compose(t2->maps[i], e);
      }
      if(ok) {
         return u;
      }
   }
   return std::nullopt;
}

std::optional<MorId> cotensor_morphism(const EnrichedCategory& b, const std::string& v, MorId m) {
   const FinCategory& c = b.underlying();
   const TensorEntry* c1 = find_entry(b.tensor_data().cotensors, v, c.dom(m));
   const TensorEntry* c2 = find_entry(b.tensor_data().cotensors, v, c.cod(m));
   if(!c1 || !c2) {
      return std::nullopt;
   }
   if(b.backend() == Backend::table) {
      const MonoidalClosedStructure& V = b.values();
      const FinCategory& vc = V.base();
      const ObjId x = c1->result;
      const MorId point = vc.compose(
         c2->psi[x], vc.compose(V.apply_hom(vc.identity(vc.object(v)), std::get<MorId>(hom_action(b, x, m, Variance::co))),
                                vc.compose(c1->phi[x], b.point(c.identity(x)))));
      return b.from_point(x, c2->result, point);
   }
   for(MorId u : c.hom(c1->result, c2->result)) {
      bool ok = true;
      for(std::size_t i = 0; i < c1->maps.size() && ok; ++i) {
         ok = c.compose(c2->maps[i], u) == c.compose(m, c1->maps[i]);
      }
      if(ok) {
         return u;
      }
   }
   return std::nullopt;
}

// ---------------------------------------------------------------------------
// finite sets

RawSetEnriched finset_category(const std::vector<std::size_t>& requested) {
   std::vector<std::size_t> sizes = requested;
   std::sort(sizes.begin(), sizes.end());
   sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
   if(sizes.empty() || sizes.back() > 9) {
      throw Error(ErrorCode::DirectiveError, "finite-set sizes must be non-empty and at most 9");
   }
   auto present = [&](std::size_t k) { return std::binary_search(sizes.begin(), sizes.end(), k); };
   auto name = [](std::size_t a, std::size_t b, const std::vector<std::size_t>& f) {
      std::string s = std::to_string(a) + ">" + std::to_string(b) + ":";
      for(std::size_t v : f) {
         s += static_cast<char>('0' + v);
      }
      return s;
   };

   RawSetEnriched out;
   ConcreteSets concrete;
   RawCategory& cat = out.category;
   std::map<std::string, std::vector<std::size_t>> fns;
   for(std::size_t a : sizes) {
      cat.objects.push_back(std::to_string(a));
      concrete.sizes[std::to_string(a)] = a;
      for(std::size_t b : sizes) {
         const std::size_t count = power(b, a);
         for(std::size_t code = 0; code < count; ++code) {
            std::vector<std::size_t> f(a);
            std::size_t rest = code;
            for(std::size_t i = a; i-- > 0;) {
               f[i] = rest % b;
               rest /= b;
            }
            const std::string id = name(a, b, f);
            cat.morphisms.push_back({id, std::to_string(a), std::to_string(b)});
            fns[id] = f;
         }
      }
      std::vector<std::size_t> id(a);
      for(std::size_t i = 0; i < a; ++i) {
         id[i] = i;
      }
      cat.identities[std::to_string(a)] = name(a, a, id);
   }
   for(const auto& g : cat.morphisms) {
      for(const auto& f : cat.morphisms) {
         if(f.cod != g.dom) {
            continue;
         }
         const auto& ff = fns[f.id];
         const auto& gf = fns[g.id];
         std::vector<std::size_t> r(ff.size());
         for(std::size_t i = 0; i < ff.size(); ++i) {
            r[i] = gf[ff[i]];
         }
         cat.compose.push_back({g.id, f.id, name(std::stoul(f.dom), std::stoul(g.cod), r)});
      }
   }
   concrete.maps = fns;
   out.concrete = std::move(concrete);

   bool full = true;
   for(std::size_t k = 0; k <= sizes.back(); ++k) {
      full = full && present(k);
   }
   if(full) {
      out.max_size = sizes.back();
   }

   for(std::size_t k = 0; k <= sizes.back(); ++k) {
      for(std::size_t a : sizes) {
         if(present(k * a)) {
            RawSetTensor t{k, std::to_string(a), std::to_string(k * a), {}};
            for(std::size_t i = 0; i < k; ++i) {
               std::vector<std::size_t> inj(a);
               for(std::size_t x = 0; x < a; ++x) {
                  inj[x] = i * a + x;
               }
               t.maps.push_back(name(a, k * a, inj));
            }
            out.tensors.push_back(std::move(t));
         }
         const std::size_t p = power(a, k);
         if(present(p)) {
            RawSetTensor t{k, std::to_string(a), std::to_string(p), {}};
            for(std::size_t i = 0; i < k; ++i) {
               std::vector<std::size_t> proj(p);
               for(std::size_t x = 0; x < p; ++x) {
                  proj[x] = (x / power(a, k - 1 - i)) % a;
               }
               t.maps.push_back(name(p, a, proj));
            }
            out.cotensors.push_back(std::move(t));
         }
      }
   }
   return out;
}

}  // namespace enrifact
