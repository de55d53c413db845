// SPDX-License-Identifier: Apache-2.0

#include <enrifact/error.hpp>
#include <enrifact/ortho.hpp>

#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "parallel.hpp"

namespace enrifact {

std::string_view to_string(Mode mode) noexcept {
   return mode == Mode::ordinary ? "ordinary" : "enriched";
}

std::string_view to_string(Side side) noexcept {
   return side == Side::left ? "left" : "right";
}

std::size_t worker_count() {
   const char* env = std::getenv("ENRIFACT_THREADS");
   if(env == nullptr) {
      return std::max(1u, std::thread::hardware_concurrency());
   }
   const std::string s(env);
   if(s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos || std::stoul(s) == 0) {
      throw Error(ErrorCode::UsageError, "ENRIFACT_THREADS must be a positive integer, got '" + s + "'");
   }
   return std::stoul(s);
}

// ---------------------------------------------------------------------------
// classes

MorphismClass MorphismClass::none(std::size_t n, std::string provenance) {
   return {std::vector<bool>(n, false), std::move(provenance)};
}

MorphismClass MorphismClass::all(std::size_t n, std::string provenance) {
   return {std::vector<bool>(n, true), std::move(provenance)};
}

MorphismClass MorphismClass::from_ids(const FinCategory& c, std::span<const std::string> ids, std::string provenance) {
   MorphismClass k = none(c.num_morphisms(), std::move(provenance));
   for(const auto& id : ids) {
      k.members[c.morphism(id)] = true;
   }
   return k;
}

std::size_t MorphismClass::size() const {
   return static_cast<std::size_t>(std::count(members.begin(), members.end(), true));
}

std::vector<MorId> MorphismClass::ids() const {
   std::vector<MorId> out;
   for(MorId f = 0; f < members.size(); ++f) {
      if(members[f]) {
         out.push_back(f);
      }
   }
   return out;
}

bool MorphismClass::subset_of(const MorphismClass& other) const {
   for(std::size_t f = 0; f < members.size(); ++f) {
      if(members[f] && !other.members[f]) {
         return false;
      }
   }
   return true;
}

Json to_json(const FinCategory& c, const MorphismClass& k) {
   Json out = Json::array();
   for(MorId f : k.ids()) {
      out.push_back(c.morphism_name(f));
   }
   return out;
}

// ---------------------------------------------------------------------------
// orthogonality

namespace {

/// Ordinary orthogonality without building payloads: w -> (w.e, m.w) must be
/// injective and hit every commuting square.
bool orthogonal_fast(const FinCategory& c, MorId e, MorId m) {
   const ObjId a1 = c.dom(e);
   const ObjId a2 = c.cod(e);
   const ObjId b1 = c.dom(m);
   const ObjId b2 = c.cod(m);
   std::map<std::pair<MorId, MorId>, int> seen;
   for(MorId w : c.hom(a2, b1)) {
      if(++seen[{c.compose(w, e), c.compose(m, w)}] > 1) {
         return false;
      }
   }
   std::map<MorId, std::size_t> tops;
   for(MorId u : c.hom(a1, b1)) {
      tops[c.compose(m, u)] += 1;
   }
   std::size_t squares = 0;
   for(MorId v : c.hom(a2, b2)) {
      auto it = tops.find(c.compose(v, e));
      squares += it == tops.end() ? 0 : it->second;
   }
   return squares == c.hom(a2, b1).size();
}

}  // namespace

Verdict is_orthogonal(const FinCategory& c, MorId e, MorId m) {
   if(e >= c.num_morphisms() || m >= c.num_morphisms()) {
      throw Error(ErrorCode::DanglingID, "orthogonality of unknown morphisms");
   }
   const ObjId a1 = c.dom(e);
   const ObjId a2 = c.cod(e);
   const ObjId b1 = c.dom(m);
   const ObjId b2 = c.cod(m);
   std::map<std::pair<MorId, MorId>, std::vector<MorId>> fillers;   // (u, v) -> w
   for(MorId w : c.hom(a2, b1)) {
      fillers[{c.compose(w, e), c.compose(m, w)}].push_back(w);
   }
   Json table = Json::array();
   for(MorId v : c.hom(a2, b2)) {
      for(MorId u : c.hom(a1, b1)) {
         if(c.compose(v, e) != c.compose(m, u)) {
            continue;
         }
         auto it = fillers.find({u, v});
         const std::size_t count = it == fillers.end() ? 0 : it->second.size();
         if(count != 1) {
            Json fs = Json::array();
            if(it != fillers.end()) {
               for(MorId w : it->second) fs.push_back(c.morphism_name(w));
            }
            // every diagonal with the two triangles it produces
            Json candidates = Json::array();
            for(MorId w : c.hom(a2, b1)) {
               candidates.push_back({{"diagonal", c.morphism_name(w)}, {"upper", c.morphism_name(c.compose(w, e))}, {"lower", c.morphism_name(c.compose(m, w))}});
            }
            return Verdict::fail(count == 0 ? "NoFiller" : "ManyFillers", {{"square", {{"top", c.morphism_name(u)}, {"bottom", c.morphism_name(v)}}},
                                                                           {"fillers", fs},
                                                                           {"candidates", candidates}});
         }
         table.push_back(Json::array({c.morphism_name(u), c.morphism_name(v), c.morphism_name(it->second.front())}));
      }
   }
   return Verdict::pass("Orthogonal", {{"fillers", table}});
}

Verdict is_v_orthogonal(const EnrichedCategory& b, MorId e, MorId m) {
   const FinCategory& c = b.underlying();
   if(e >= c.num_morphisms() || m >= c.num_morphisms()) {
      throw Error(ErrorCode::DanglingID, "orthogonality of unknown morphisms");
   }
   const Verdict v = hom_square_is_pullback(b, e, m);
   if(!v) {
      return v;
   }
   return Verdict::pass("VOrthogonal");
}

// ---------------------------------------------------------------------------
// workspace

struct Workspace::Cache {
   std::once_flag flags_once, vflags_once, ord_once, enr_once;
   std::vector<MorphismFlags> flags;
   std::vector<VFlags> vflags;
   std::vector<unsigned char> ord;
   std::vector<unsigned char> enr;
};

Workspace::Workspace(std::shared_ptr<const EnrichedCategory> b) : b_(std::move(b)), cache_(std::make_unique<Cache>()) {}
Workspace::~Workspace() = default;
Workspace::Workspace(Workspace&&) noexcept = default;
Workspace& Workspace::operator=(Workspace&&) noexcept = default;

const std::vector<MorphismFlags>& Workspace::flags() const {
   std::call_once(cache_->flags_once, [&] {
      std::vector<MorphismFlags> out(size());
      detail::parallel_for(size(), [&](std::size_t f) { out[f] = classify_morphism(underlying(), f); });
      cache_->flags = std::move(out);
   });
   return cache_->flags;
}

const std::vector<VFlags>& Workspace::v_flags() const {
   std::call_once(cache_->vflags_once, [&] {
      std::vector<VFlags> out(size());
      detail::parallel_for(size(), [&](std::size_t f) { out[f] = v_classify(category(), f); });
      cache_->vflags = std::move(out);
   });
   return cache_->vflags;
}

bool Workspace::orthogonal(MorId e, MorId m, Mode mode) const {
   const std::size_t n = size();
   if(mode == Mode::ordinary) {
      std::call_once(cache_->ord_once, [&] {
         std::vector<unsigned char> rel(n * n);
         detail::parallel_for(n, [&](std::size_t x) {
            for(MorId y = 0; y < n; ++y) rel[x * n + y] = orthogonal_fast(underlying(), x, y) ? 1 : 0;
         });
         cache_->ord = std::move(rel);
      });
      return cache_->ord[e * n + m] != 0;
   }
   std::call_once(cache_->enr_once, [&] {
      std::vector<unsigned char> rel(n * n);
      detail::parallel_for(n, [&](std::size_t x) {
         for(MorId y = 0; y < n; ++y) rel[x * n + y] = hom_square_is_pullback(category(), x, y).holds ? 1 : 0;
      });
      cache_->enr = std::move(rel);
   });
   return cache_->enr[e * n + m] != 0;
}

namespace {

template <typename P>
MorphismClass select(std::size_t n, const std::string& name, P&& pred) {
   MorphismClass k = MorphismClass::none(n, "predicate(" + name + ")");
   for(MorId f = 0; f < n; ++f) {
      k.members[f] = pred(f);
   }
   return k;
}

}  // namespace

MorphismClass Workspace::isos() const {
   return select(size(), "isos", [&](MorId f) { return flags()[f].iso; });
}
MorphismClass Workspace::monos() const {
   return select(size(), "monos", [&](MorId f) { return flags()[f].mono; });
}
MorphismClass Workspace::epis() const {
   return select(size(), "epis", [&](MorId f) { return flags()[f].epi; });
}
MorphismClass Workspace::v_monos() const {
   return select(size(), "v-monos", [&](MorId f) { return v_flags()[f].v_mono; });
}
MorphismClass Workspace::v_epis() const {
   return select(size(), "v-epis", [&](MorId f) { return v_flags()[f].v_epi; });
}
MorphismClass Workspace::v_regular_monos() const {
   return select(size(), "v-regular-monos", [&](MorId f) { return v_flags()[f].v_regular_mono; });
}
MorphismClass Workspace::v_regular_epis() const {
   return select(size(), "v-regular-epis", [&](MorId f) { return v_flags()[f].v_regular_epi; });
}

// ---------------------------------------------------------------------------
// class operators

MorphismClass right_class(const Workspace& ws, const MorphismClass& e, Mode mode) {
   const std::vector<MorId> lefts = e.ids();
   MorphismClass out = MorphismClass::none(ws.size(), "right_class(" + e.provenance + ", " + std::string(to_string(mode)) + ")");
   for(MorId m = 0; m < ws.size(); ++m) {
      out.members[m] = std::all_of(lefts.begin(), lefts.end(), [&](MorId x) { return ws.orthogonal(x, m, mode); });
   }
   return out;
}

MorphismClass left_class(const Workspace& ws, const MorphismClass& m, Mode mode) {
   const std::vector<MorId> rights = m.ids();
   MorphismClass out = MorphismClass::none(ws.size(), "left_class(" + m.provenance + ", " + std::string(to_string(mode)) + ")");
   for(MorId e = 0; e < ws.size(); ++e) {
      out.members[e] = std::all_of(rights.begin(), rights.end(), [&](MorId x) { return ws.orthogonal(e, x, mode); });
   }
   return out;
}

Prefactorization prefactorization_closure(const Workspace& ws, const MorphismClass& seed, Side side, Mode mode) {
   Prefactorization p;
   const std::string tag = "closure(" + seed.provenance + ", " + std::string(to_string(side)) + ")";
   if(side == Side::right) {
      p.right = right_class(ws, seed, mode);
      p.left = left_class(ws, p.right, mode);
   } else {
      p.left = left_class(ws, seed, mode);
      p.right = right_class(ws, p.left, mode);
   }
   p.left.provenance = tag;
   p.right.provenance = tag;
   if(!is_prefactorization_system(ws, p.left, p.right, mode).holds) {
      throw std::logic_error("closure output is not a prefactorization system");
   }
   return p;
}

Verdict is_prefactorization_system(const Workspace& ws, const MorphismClass& e, const MorphismClass& m, Mode mode) {
   const FinCategory& c = ws.underlying();
   const std::vector<MorId> es = e.ids();
   const std::vector<MorId> ms = m.ids();
   const std::string mode_name(to_string(mode));

   for(MorId f = 0; f < ws.size(); ++f) {
      auto bad = std::find_if(es.begin(), es.end(), [&](MorId x) { return !ws.orthogonal(x, f, mode); });
      const bool in_closure = bad == es.end();
      if(in_closure != m.contains(f)) {
         Json cex = {{"morphism", c.morphism_name(f)}, {"side", "right"}, {"mode", mode_name}};
         if(in_closure) {
            cex["issue"] = "orthogonal to every left morphism but not in the right class";
         } else {
            cex["issue"] = "in the right class but not orthogonal to a left morphism";
            cex["partner"] = c.morphism_name(*bad);
         }
         return Verdict::fail("RightClassMismatch", cex);
      }
   }
   for(MorId f = 0; f < ws.size(); ++f) {
      auto bad = std::find_if(ms.begin(), ms.end(), [&](MorId x) { return !ws.orthogonal(f, x, mode); });
      const bool in_closure = bad == ms.end();
      if(in_closure != e.contains(f)) {
         Json cex = {{"morphism", c.morphism_name(f)}, {"side", "left"}, {"mode", mode_name}};
         if(in_closure) {
            cex["issue"] = "orthogonal to every right morphism but not in the left class";
         } else {
            cex["issue"] = "in the left class but not orthogonal to a right morphism";
            cex["partner"] = c.morphism_name(*bad);
         }
         return Verdict::fail("LeftClassMismatch", cex);
      }
   }
   return Verdict::pass("Prefactorization", {{"left", to_json(c, e)}, {"right", to_json(c, m)}});
}

}  // namespace enrifact
