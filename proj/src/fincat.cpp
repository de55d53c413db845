// SPDX-License-Identifier: Apache-2.0

#include <enrifact/error.hpp>
#include <enrifact/fincat.hpp>

#include "plan.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace enrifact {

namespace {

std::string quote(std::string_view s) {
   return "'" + std::string(s) + "'";
}

std::size_t index_of(const std::vector<std::string>& sorted, std::string_view id) {
   auto it = std::lower_bound(sorted.begin(), sorted.end(), id,
                              [](const std::string& a, std::string_view b) { return a < b; });
   if(it == sorted.end() || *it != id) {
      return no_id;
   }
   return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

FinCategory FinCategory::validate(const RawCategory& raw) {
   FinCategory c;

   c.object_names_ = raw.objects;
   std::sort(c.object_names_.begin(), c.object_names_.end());
   for(std::size_t i = 1; i < c.object_names_.size(); ++i) {
      if(c.object_names_[i] == c.object_names_[i - 1]) {
         throw Error(ErrorCode::DuplicateID, "object " + quote(c.object_names_[i]));
      }
   }

   std::vector<const RawMorphism*> sorted;
   sorted.reserve(raw.morphisms.size());
   for(const auto& m : raw.morphisms) {
      sorted.push_back(&m);
   }
   std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
   for(std::size_t i = 1; i < sorted.size(); ++i) {
      if(sorted[i]->id == sorted[i - 1]->id) {
         throw Error(ErrorCode::DuplicateID, "morphism " + quote(sorted[i]->id));
      }
   }

   const std::size_t n = sorted.size();
   c.morphism_names_.reserve(n);
   for(const auto* m : sorted) {
      const ObjId d = c.find_object(m->dom).value_or(no_id);
      const ObjId e = c.find_object(m->cod).value_or(no_id);
      if(d == no_id || e == no_id) {
         throw Error(ErrorCode::DanglingID,
                     "morphism " + quote(m->id) + " references unknown object " + quote(d == no_id ? m->dom : m->cod));
      }
      c.morphism_names_.push_back(m->id);
      c.dom_.push_back(d);
      c.cod_.push_back(e);
   }

   c.identity_.assign(c.num_objects(), no_id);
   for(const auto& [obj, mor] : raw.identities) {
      const auto x = c.find_object(obj);
      if(!x) {
         throw Error(ErrorCode::DanglingID, "identity declared for unknown object " + quote(obj));
      }
      const auto f = c.find_morphism(mor);
      if(!f) {
         throw Error(ErrorCode::DanglingID, "identity of " + quote(obj) + " is unknown morphism " + quote(mor));
      }
      if(c.dom_[*f] != *x || c.cod_[*f] != *x) {
         throw Error(ErrorCode::IdentityViolation, "identity " + quote(mor) + " of " + quote(obj) + " is not an endomorphism of it");
      }
      c.identity_[*x] = *f;
   }
   for(ObjId x = 0; x < c.num_objects(); ++x) {
      if(c.identity_[x] == no_id) {
         throw Error(ErrorCode::IdentityViolation, "object " + quote(c.object_names_[x]) + " has no identity");
      }
   }

   c.table_.assign(n * n, no_id);
   for(const auto& [gs, fs, rs] : raw.compose) {
      const auto g = c.find_morphism(gs);
      const auto f = c.find_morphism(fs);
      const auto r = c.find_morphism(rs);
      if(!g || !f || !r) {
         throw Error(ErrorCode::DanglingID, "composition entry (" + gs + ", " + fs + ") -> " + rs);
      }
      if(c.dom_[*g] != c.cod_[*f]) {
         throw Error(ErrorCode::NonComposableEntry, "composition entry for non-composable pair (" + gs + ", " + fs + ")");
      }
      auto& slot = c.table_[*g * n + *f];
      if(slot != no_id) {
         throw Error(ErrorCode::DuplicateID, "composition entry (" + gs + ", " + fs + ") given twice");
      }
      slot = *r;
   }

   for(MorId g = 0; g < n; ++g) {
      for(MorId f = 0; f < n; ++f) {
         if(c.dom_[g] == c.cod_[f] && c.table_[g * n + f] == no_id) {
            throw Error(ErrorCode::MissingComposite,
                        "no composite for (" + c.morphism_names_[g] + ", " + c.morphism_names_[f] + ")");
         }
      }
   }

   for(MorId f = 0; f < n; ++f) {
      const MorId left = c.table_[f * n + c.identity_[c.dom_[f]]];
      const MorId right = c.table_[c.identity_[c.cod_[f]] * n + f];
      if(left != f || right != f) {
         const bool bad_left = left != f;
         const std::string& id = c.morphism_names_[c.identity_[bad_left ? c.dom_[f] : c.cod_[f]]];
         throw Error(ErrorCode::IdentityViolation,
                     bad_left ? "compose(" + c.morphism_names_[f] + ", " + id + ") = " + c.morphism_names_[left]
                              : "compose(" + id + ", " + c.morphism_names_[f] + ") = " + c.morphism_names_[right]);
      }
   }

   for(MorId g = 0; g < n; ++g) {
      for(MorId f = 0; f < n; ++f) {
         const MorId r = c.table_[g * n + f];
         if(r != no_id && (c.dom_[r] != c.dom_[f] || c.cod_[r] != c.cod_[g])) {
            throw Error(ErrorCode::TypeMismatch, "compose(" + c.morphism_names_[g] + ", " + c.morphism_names_[f] +
                                                    ") = " + c.morphism_names_[r] + " has the wrong domain or codomain");
         }
      }
   }

   c.build_homs();

   // associativity over all composable triples h.g.f
   for(MorId f = 0; f < n; ++f) {
      for(ObjId y = 0; y < c.num_objects(); ++y) {
         for(MorId g : c.hom(c.cod_[f], y)) {
            const MorId gf = c.compose(g, f);
            for(ObjId z = 0; z < c.num_objects(); ++z) {
               for(MorId h : c.hom(y, z)) {
                  if(c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
                     throw Error(ErrorCode::AssociativityViolation, "(" + c.morphism_names_[h] + ", " +
                                                                       c.morphism_names_[g] + ", " + c.morphism_names_[f] + ")");
                  }
               }
            }
         }
      }
   }

   return c;
}

void FinCategory::build_homs() {
   hom_.assign(num_objects() * num_objects(), {});
   for(MorId f = 0; f < num_morphisms(); ++f) {
      hom_[dom_[f] * num_objects() + cod_[f]].push_back(f);
   }
}

std::optional<ObjId> FinCategory::find_object(std::string_view id) const {
   const auto i = index_of(object_names_, id);
   return i == no_id ? std::nullopt : std::optional<ObjId>(i);
}

std::optional<MorId> FinCategory::find_morphism(std::string_view id) const {
   const auto i = index_of(morphism_names_, id);
   return i == no_id ? std::nullopt : std::optional<MorId>(i);
}

ObjId FinCategory::object(std::string_view id) const {
   if(auto x = find_object(id)) {
      return *x;
   }
   throw Error(ErrorCode::DanglingID, "unknown object " + quote(id));
}

MorId FinCategory::morphism(std::string_view id) const {
   if(auto f = find_morphism(id)) {
      return *f;
   }
   throw Error(ErrorCode::DanglingID, "unknown morphism " + quote(id));
}

FinCategory FinCategory::opposite() const {
   FinCategory op;
   op.object_names_ = object_names_;
   op.morphism_names_ = morphism_names_;
   op.dom_ = cod_;
   op.cod_ = dom_;
   op.identity_ = identity_;
   const std::size_t n = num_morphisms();
   op.table_.assign(n * n, no_id);
   for(MorId g = 0; g < n; ++g) {
      for(MorId f = 0; f < n; ++f) {
         op.table_[g * n + f] = table_[f * n + g];
      }
   }
   op.build_homs();
   return op;
}

RawCategory FinCategory::to_raw() const {
   RawCategory raw;
   raw.objects = object_names_;
   for(MorId f = 0; f < num_morphisms(); ++f) {
      raw.morphisms.push_back({morphism_names_[f], object_names_[dom_[f]], object_names_[cod_[f]]});
   }
   for(ObjId x = 0; x < num_objects(); ++x) {
      raw.identities[object_names_[x]] = morphism_names_[identity_[x]];
   }
   for(MorId g = 0; g < num_morphisms(); ++g) {
      for(MorId f = 0; f < num_morphisms(); ++f) {
         if(composable(g, f)) {
            raw.compose.push_back({morphism_names_[g], morphism_names_[f], morphism_names_[compose(g, f)]});
         }
      }
   }
   return raw;
}

// ---------------------------------------------------------------------------
// morphism predicates

MorphismFlags classify_morphism(const FinCategory& c, MorId f) {
   MorphismFlags flags;
   const ObjId a = c.dom(f);
   const ObjId b = c.cod(f);

   flags.mono = true;
   for(ObjId x = 0; x < c.num_objects() && flags.mono; ++x) {
      std::set<MorId> seen;
      for(MorId u : c.hom(x, a)) {
         if(!seen.insert(c.compose(f, u)).second) {
            flags.mono = false;
            break;
         }
      }
   }

   flags.epi = true;
   for(ObjId x = 0; x < c.num_objects() && flags.epi; ++x) {
      std::set<MorId> seen;
      for(MorId u : c.hom(b, x)) {
         if(!seen.insert(c.compose(u, f)).second) {
            flags.epi = false;
            break;
         }
      }
   }

   for(MorId r : c.hom(b, a)) {
      const bool left = c.compose(r, f) == c.identity(a);
      const bool right = c.compose(f, r) == c.identity(b);
      flags.section = flags.section || left;
      flags.retraction = flags.retraction || right;
      flags.iso = flags.iso || (left && right);
   }
   return flags;
}

std::vector<MorphismFlags> classify_all(const FinCategory& c) {
   std::vector<MorphismFlags> out;
   out.reserve(c.num_morphisms());
   for(MorId f = 0; f < c.num_morphisms(); ++f) {
      out.push_back(classify_morphism(c, f));
   }
   return out;
}

Json to_json(const MorphismFlags& flags) {
   Json out = Json::array();
   if(flags.epi) out.push_back("epi");
   if(flags.iso) out.push_back("iso");
   if(flags.mono) out.push_back("mono");
   if(flags.retraction) out.push_back("retraction");
   if(flags.section) out.push_back("section");
   return out;
}

// ---------------------------------------------------------------------------
// squares

bool commutes(const FinCategory& c, const Square& sq) {
   return c.dom(sq.f) == c.dom(sq.g) && c.composable(sq.h, sq.f) && c.composable(sq.k, sq.g) &&
          c.cod(sq.h) == c.cod(sq.k) && c.compose(sq.h, sq.f) == c.compose(sq.k, sq.g);
}

Verdict is_pullback_square(const FinCategory& c, const Square& sq) {
   if(!commutes(c, sq)) {
      throw Error(ErrorCode::NonCommutingSquare,
                  "(" + c.morphism_name(sq.f) + ", " + c.morphism_name(sq.g) + ", " + c.morphism_name(sq.h) + ", " +
                     c.morphism_name(sq.k) + ")");
   }
   const ObjId p = c.dom(sq.f);
   const ObjId x = c.cod(sq.f);
   const ObjId y = c.cod(sq.g);

   for(ObjId w = 0; w < c.num_objects(); ++w) {
      std::map<std::pair<MorId, MorId>, std::vector<MorId>> by_pair;
      for(MorId u : c.hom(w, p)) {
         by_pair[{c.compose(sq.f, u), c.compose(sq.g, u)}].push_back(u);
      }
      std::size_t cone_pairs = 0;
      for(MorId a : c.hom(w, x)) {
         for(MorId b : c.hom(w, y)) {
            cone_pairs += c.compose(sq.h, a) == c.compose(sq.k, b) ? 1 : 0;
         }
      }
      for(MorId a : c.hom(w, x)) {
         for(MorId b : c.hom(w, y)) {
            if(c.compose(sq.h, a) != c.compose(sq.k, b)) {
               continue;
            }
            auto it = by_pair.find({a, b});
            const std::size_t count = it == by_pair.end() ? 0 : it->second.size();
            if(count != 1) {
               Json med = Json::array();
               if(it != by_pair.end()) {
                  for(MorId u : it->second) med.push_back(c.morphism_name(u));
               }
               return Verdict::fail(count == 0 ? "NoMediator" : "ManyMediators",
                                    {{"object", c.object_name(w)},
                                     {"p", c.morphism_name(a)},
                                     {"q", c.morphism_name(b)},
                                     {"mediators", med},
                                     {"cone_pairs", cone_pairs},
                                     {"apex_points", c.hom(w, p).size()}});
            }
         }
      }
   }
   return Verdict::pass("Pullback");
}

// ---------------------------------------------------------------------------
// diagrams and cones

Diagram Diagram::wide_cospan(const FinCategory& c, ObjId codomain, std::span<const MorId> family) {
   Diagram d;
   d.nodes.push_back("c");
   d.objects.push_back(codomain);
   for(std::size_t i = 0; i < family.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "m%03zu", i);
      d.nodes.push_back(name);
      d.objects.push_back(c.dom(family[i]));
      d.edges.push_back({i + 1, 0, family[i]});
   }
   return d;
}

Diagram Diagram::cospan(const FinCategory& c, MorId f, MorId g) {
   const std::array<MorId, 2> fam{f, g};
   return wide_cospan(c, c.cod(f), fam);
}

Diagram Diagram::parallel_pair(const FinCategory& c, MorId p, MorId q) {
   Diagram d;
   d.nodes = {"s", "t"};
   d.objects = {c.dom(p), c.cod(p)};
   d.edges = {{0, 1, p}, {0, 1, q}};
   return d;
}

Diagram Diagram::discrete(std::span<const ObjId> objects) {
   Diagram d;
   for(std::size_t i = 0; i < objects.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "n%03zu", i);
      d.nodes.push_back(name);
      d.objects.push_back(objects[i]);
   }
   return d;
}

void Diagram::check(const FinCategory& c) const {
   if(objects.size() != nodes.size()) {
      throw Error(ErrorCode::MalformedDiagram, "node/object count mismatch");
   }
   for(std::size_t i = 1; i < nodes.size(); ++i) {
      if(!(nodes[i - 1] < nodes[i])) {
         throw Error(ErrorCode::MalformedDiagram, "node IDs must be strictly increasing at " + nodes[i]);
      }
   }
   for(ObjId x : objects) {
      if(x >= c.num_objects()) {
         throw Error(ErrorCode::MalformedDiagram, "node references unknown object");
      }
   }
   for(const auto& e : edges) {
      if(e.from >= size() || e.to >= size() || e.mor >= c.num_morphisms()) {
         throw Error(ErrorCode::MalformedDiagram, "edge references unknown node or morphism");
      }
      if(c.dom(e.mor) != objects[e.from] || c.cod(e.mor) != objects[e.to]) {
         throw Error(ErrorCode::MalformedDiagram, "edge " + c.morphism_name(e.mor) + " does not match node objects " +
                                                     nodes[e.from] + " -> " + nodes[e.to]);
      }
   }
}

Json to_json(const FinCategory& c, const Diagram& d) {
   Json nodes = Json::object();
   for(std::size_t i = 0; i < d.size(); ++i) {
      nodes[d.nodes[i]] = c.object_name(d.objects[i]);
   }
   Json edges = Json::array();
   for(const auto& e : d.edges) {
      edges.push_back(Json::array({d.nodes[e.from], d.nodes[e.to], c.morphism_name(e.mor)}));
   }
   return {{"nodes", nodes}, {"edges", edges}};
}

Json to_json(const FinCategory& c, const Diagram& d, const Cone& cone) {
   Json legs = Json::object();
   for(std::size_t i = 0; i < d.size() && i < cone.legs.size(); ++i) {
      legs[d.nodes[i]] = c.morphism_name(cone.legs[i]);
   }
   return {{"apex", c.object_name(cone.apex)}, {"legs", legs}};
}

bool is_cone(const FinCategory& c, const Diagram& d, const Cone& cone) {
   if(cone.apex >= c.num_objects() || cone.legs.size() != d.size()) {
      return false;
   }
   for(std::size_t i = 0; i < d.size(); ++i) {
      if(cone.legs[i] >= c.num_morphisms() || c.dom(cone.legs[i]) != cone.apex || c.cod(cone.legs[i]) != d.objects[i]) {
         return false;
      }
   }
   for(const auto& e : d.edges) {
      if(c.compose(e.mor, cone.legs[e.from]) != cone.legs[e.to]) {
         return false;
      }
   }
   return true;
}

namespace {

detail::AssignmentPlan plan_cones(const Diagram& d) {
   std::vector<detail::PlanEdge> edges;
   edges.reserve(d.edges.size());
   for(const auto& e : d.edges) {
      edges.push_back({e.from, e.to});
   }
   return detail::plan_assignment(d.size(), edges);
}

class ConeWalker {
public:
   ConeWalker(const FinCategory& c, const Diagram& d, ObjId apex,
              const std::function<bool(std::span<const MorId>)>& visit)
      : c_(c), d_(d), apex_(apex), visit_(visit), plan_(plan_cones(d)), legs_(d.size(), no_id) {}

   void run() { step(0); }

private:
   bool step(std::size_t pos) {
      if(pos == plan_.order.size()) {
         return visit_(legs_);
      }
      const std::size_t node = plan_.order[pos];
      if(const auto& i = plan_.forced_by[pos]) {
         const auto& e = d_.edges[*i];
         return place(pos, node, c_.compose(e.mor, legs_[e.from]));
      }
      for(MorId x : c_.hom(apex_, d_.objects[node])) {
         if(!place(pos, node, x)) {
            return false;
         }
      }
      return true;
   }

   bool place(std::size_t pos, std::size_t node, MorId x) {
      legs_[node] = x;
      for(std::size_t i : plan_.checks[pos]) {
         const auto& e = d_.edges[i];
         if(c_.compose(e.mor, legs_[e.from]) != legs_[e.to]) {
            legs_[node] = no_id;
            return true;
         }
      }
      const bool more = step(pos + 1);
      legs_[node] = no_id;
      return more;
   }

   const FinCategory& c_;
   const Diagram& d_;
   ObjId apex_;
   const std::function<bool(std::span<const MorId>)>& visit_;
   detail::AssignmentPlan plan_;
   std::vector<MorId> legs_;
};

std::vector<MorId> compose_legs(const FinCategory& c, std::span<const MorId> legs, MorId u) {
   std::vector<MorId> out(legs.size());
   for(std::size_t i = 0; i < legs.size(); ++i) {
      out[i] = c.compose(legs[i], u);
   }
   return out;
}

/// u -> legs.u is injective on hom(w, apex).
bool factors_injectively(const FinCategory& c, const Cone& cone, ObjId w) {
   std::set<std::vector<MorId>> seen;
   for(MorId u : c.hom(w, cone.apex)) {
      if(!seen.insert(compose_legs(c, cone.legs, u)).second) {
         return false;
      }
   }
   return true;
}

}  // namespace

void for_each_cone(const FinCategory& c, const Diagram& d, ObjId apex,
                   const std::function<bool(std::span<const MorId>)>& visit) {
   ConeWalker(c, d, apex, visit).run();
}

std::size_t count_cones(const FinCategory& c, const Diagram& d, ObjId apex) {
   std::size_t n = 0;
   for_each_cone(c, d, apex, [&](std::span<const MorId>) {
      ++n;
      return true;
   });
   return n;
}

Verdict is_limit_cone(const FinCategory& c, const Diagram& d, const Cone& cone) {
   d.check(c);
   if(!is_cone(c, d, cone)) {
      throw Error(ErrorCode::NotACone, "legs do not form a cone over the diagram");
   }
   for(ObjId w = 0; w < c.num_objects(); ++w) {
      std::map<std::vector<MorId>, std::vector<MorId>> images;
      for(MorId u : c.hom(w, cone.apex)) {
         images[compose_legs(c, cone.legs, u)].push_back(u);
      }
      std::optional<std::pair<std::vector<MorId>, std::vector<MorId>>> worst;
      for_each_cone(c, d, w, [&](std::span<const MorId> legs) {
         std::vector<MorId> key(legs.begin(), legs.end());
         auto it = images.find(key);
         std::vector<MorId> med = it == images.end() ? std::vector<MorId>{} : it->second;
         if(med.size() != 1 && (!worst || key < worst->first)) {
            worst.emplace(std::move(key), std::move(med));
         }
         return true;
      });
      if(worst) {
         Json meds = Json::array();
         for(MorId u : worst->second) meds.push_back(c.morphism_name(u));
         return Verdict::fail(worst->second.empty() ? "NoMediator" : "ManyMediators",
                              {{"object", c.object_name(w)},
                               {"cone", to_json(c, d, Cone{w, worst->first})},
                               {"mediators", meds}});
      }
   }
   return Verdict::pass("Limit", to_json(c, d, cone));
}

std::optional<Cone> limit_cone(const FinCategory& c, const Diagram& d) {
   d.check(c);
   std::vector<std::size_t> counts(c.num_objects());
   for(ObjId w = 0; w < c.num_objects(); ++w) {
      counts[w] = count_cones(c, d, w);
   }
   for(ObjId x = 0; x < c.num_objects(); ++x) {
      bool sizes_match = true;
      for(ObjId w = 0; w < c.num_objects() && sizes_match; ++w) {
         sizes_match = c.hom(w, x).size() == counts[w];
      }
      if(!sizes_match) {
         continue;
      }
      std::vector<std::vector<MorId>> cones;
      for_each_cone(c, d, x, [&](std::span<const MorId> legs) {
         cones.emplace_back(legs.begin(), legs.end());
         return true;
      });
      std::sort(cones.begin(), cones.end());
      for(auto& legs : cones) {
         Cone cone{x, std::move(legs)};
         bool terminal = true;
         for(ObjId w = 0; w < c.num_objects() && terminal; ++w) {
            terminal = factors_injectively(c, cone, w);
         }
         if(terminal) {
            return cone;
         }
      }
   }
   return std::nullopt;
}

std::optional<KernelPair> kernel_pair(const FinCategory& c, MorId f) {
   if(f >= c.num_morphisms()) {
      throw Error(ErrorCode::DanglingID, "kernel pair of unknown morphism");
   }
   const auto cone = limit_cone(c, Diagram::cospan(c, f, f));
   if(!cone) {
      return std::nullopt;
   }
   return KernelPair{cone->apex, cone->legs[1], cone->legs[2]};
}

std::vector<MorId> mediators(const FinCategory& c, const Cone& from, const Cone& to) {
   std::vector<MorId> out;
   for(MorId u : c.hom(from.apex, to.apex)) {
      if(compose_legs(c, to.legs, u) == from.legs) {
         out.push_back(u);
      }
   }
   return out;
}

}  // namespace enrifact
