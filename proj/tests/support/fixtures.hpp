// SPDX-License-Identifier: Apache-2.0
// Test-side constructions and brute-force oracles over plain function tables.

#ifndef ENRIFACT_TESTS_FIXTURES_HPP
#define ENRIFACT_TESTS_FIXTURES_HPP

#include <enrifact/enriched.hpp>
#include <enrifact/fincat.hpp>
#include <enrifact/monoidal.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using namespace enrifact;

inline RawCategory walking_arrow() {
   RawCategory raw;
   raw.objects = {"0", "1"};
   raw.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"a", "0", "1"}};
   raw.identities = {{"0", "id0"}, {"1", "id1"}};
   raw.compose = {{"id0", "id0", "id0"}, {"id1", "id1", "id1"}, {"a", "id0", "a"}, {"id1", "a", "a"}};
   return raw;
}

/// Thin category of a preorder given by generating pairs x <= y; morphism IDs
/// "x<y" with identities "x<x".
inline RawCategory preorder(const std::vector<std::string>& objects, const std::vector<std::pair<std::string, std::string>>& gens) {
   std::set<std::pair<std::string, std::string>> leq;
   for(const auto& x : objects) leq.insert({x, x});
   for(const auto& p : gens) leq.insert(p);
   bool grew = true;
   while(grew) {
      grew = false;
      for(const auto& [a, b] : std::set(leq)) {
         for(const auto& [c, d] : std::set(leq)) {
            if(b == c && leq.insert({a, d}).second) grew = true;
         }
      }
   }
   RawCategory raw;
   raw.objects = objects;
   for(const auto& [a, b] : leq) {
      raw.morphisms.push_back({a + "<" + b, a, b});
   }
   for(const auto& x : objects) raw.identities[x] = x + "<" + x;
   for(const auto& [a, b] : leq) {
      for(const auto& [c, d] : leq) {
         if(b == c) raw.compose.push_back({c + "<" + d, a + "<" + b, a + "<" + d});
      }
   }
   return raw;
}

/// The commutative square 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3.
inline RawCategory commutative_square() {
   return preorder({"0", "1", "2", "3"}, {{"0", "1"}, {"0", "2"}, {"1", "3"}, {"2", "3"}});
}

inline FinCategory finset(const std::vector<std::size_t>& sizes) {
   return FinCategory::validate(finset_category(sizes).category);
}

inline FinCategory finset_upto(std::size_t n) {
   std::vector<std::size_t> sizes;
   for(std::size_t k = 0; k <= n; ++k) sizes.push_back(k);
   return finset(sizes);
}

/// A function between finite cardinals, read back from a morphism ID "a>b:digits".
struct Fn {
   std::size_t dom = 0;
   std::size_t cod = 0;
   std::vector<std::size_t> at;
};

inline Fn parse_fn(const std::string& id) {
   Fn f;
   const auto gt = id.find('>');
   const auto colon = id.find(':');
   f.dom = std::stoul(id.substr(0, gt));
   f.cod = std::stoul(id.substr(gt + 1, colon - gt - 1));
   for(std::size_t i = colon + 1; i < id.size(); ++i) f.at.push_back(static_cast<std::size_t>(id[i] - '0'));
   return f;
}

inline bool injective(const Fn& f) {
   std::set<std::size_t> seen(f.at.begin(), f.at.end());
   return seen.size() == f.at.size();
}

inline bool surjective(const Fn& f) {
   std::set<std::size_t> seen(f.at.begin(), f.at.end());
   return seen.size() == f.cod;
}

/// Pairs (x, y) with h(x) = k(y).
inline std::vector<std::pair<std::size_t, std::size_t>> fibre_pairs(const Fn& h, const Fn& k) {
   std::vector<std::pair<std::size_t, std::size_t>> out;
   for(std::size_t x = 0; x < h.dom; ++x)
      for(std::size_t y = 0; y < k.dom; ++y)
         if(h.at[x] == k.at[y]) out.push_back({x, y});
   return out;
}

/// Set-level pullback test: p -> (f p, g p) is a bijection onto the fibre pairs.
inline bool set_pullback(const Fn& f, const Fn& g, const Fn& h, const Fn& k) {
   const auto pairs = fibre_pairs(h, k);
   std::set<std::pair<std::size_t, std::size_t>> image;
   for(std::size_t p = 0; p < f.dom; ++p) image.insert({f.at[p], g.at[p]});
   return image.size() == f.dom && image == std::set(pairs.begin(), pairs.end());
}

inline EnrichedCategory finset_enriched(std::size_t n) {
   std::vector<std::size_t> sizes;
   for(std::size_t k = 0; k <= n; ++k) sizes.push_back(k);
   return EnrichedCategory::validate(finset_category(sizes));
}

/// Category enriched over a thin V given by its hom-object matrix. Composition
/// and identities are the unique V-arrows; validation rejects the matrix when
/// they do not exist.
inline RawTableEnriched thin_enriched(const MonoidalClosedStructure& V, const std::vector<std::string>& objects,
                                      const std::function<std::string(const std::string&, const std::string&)>& hom) {
   const FinCategory& vc = V.base();
   auto tensor = [&](const std::string& x, const std::string& y) {
      return vc.object_name(V.tensor(vc.object(x), vc.object(y)));
   };
   RawTableEnriched b;
   b.values = V.to_raw();
   b.objects = objects;
   const std::string unit = vc.object_name(V.unit());
   for(const auto& a : objects) {
      b.ids.push_back({a, thin_arrow(unit, hom(a, a))});
      for(const auto& x : objects) {
         b.hom.push_back({a, x, hom(a, x)});
         for(const auto& c : objects) {
            b.comp.push_back({a, x, c, thin_arrow(tensor(hom(x, c), hom(a, x)), hom(a, c))});
         }
      }
   }
   return b;
}

/// The n-chain 0 < 1 < ... as a category enriched over V2 (the 2-chain with min).
inline RawTableEnriched chain_over_two(std::size_t n) {
   const auto V = quantale_to_V(quantale_chain(2, "min"));
   std::vector<std::string> objects;
   for(std::size_t i = 0; i < n; ++i) objects.push_back(std::to_string(i));
   return thin_enriched(V, objects, [](const std::string& a, const std::string& b) { return std::stoul(a) <= std::stoul(b) ? "1" : "0"; });
}

/// Over the Lukasiewicz 3-chain: p with arrows to a and b at full strength, z
/// at strength 1 to both. The ordinary product of a and b is p, but hom(z, p)
/// is 0 while the meet of hom(z, a) and hom(z, b) is 1.
inline RawTableEnriched product_gap() {
   const auto V = quantale_to_V(quantale_chain(3, "lukasiewicz"));
   return thin_enriched(V, {"a", "b", "p", "z"}, [](const std::string& x, const std::string& y) -> std::string {
      if(x == y) return "2";
      if(x == "p" && (y == "a" || y == "b")) return "2";
      if(x == "z" && (y == "a" || y == "b")) return "1";
      return "0";
   });
}

/// Over the Lukasiewicz 3-chain: a and b at mutual distance 1, c at full
/// strength to everything and nothing back. c->a and c->b have no commuting
/// squares, so they are orthogonal, but hom(a, c) = 0 is not the meet 1.
inline RawTableEnriched strict_gap() {
   const auto V = quantale_to_V(quantale_chain(3, "lukasiewicz"));
   return thin_enriched(V, {"a", "b", "c"}, [](const std::string& x, const std::string& y) -> std::string {
      if(x == y || x == "c") return "2";
      if(y == "c") return "0";
      return "1";
   });
}

/// A non-thin V: one object "*" whose endomorphisms form Z/2 ("0", "1"),
/// tensor adds, internal hom is "*", currying is the identity.
inline RawMonoidal z2_values() {
   RawMonoidal v;
   v.category.objects = {"*"};
   v.category.morphisms = {{"0", "*", "*"}, {"1", "*", "*"}};
   v.category.identities = {{"*", "0"}};
   const char* names[] = {"0", "1"};
   for(int a = 0; a < 2; ++a) {
      for(int b = 0; b < 2; ++b) {
         v.category.compose.push_back({names[a], names[b], names[a ^ b]});
         v.tensor_mor.push_back({names[a], names[b], names[a ^ b]});
      }
   }
   v.curry = {{"*", "*", "*", "0", "0"}, {"*", "*", "*", "1", "1"}};
   v.unit = "*";
   v.tensor_obj = {{"*", "*", "*"}};
   v.symmetry = {{"*", "*", "0"}};
   v.hom_obj = {{"*", "*", "*"}};
   return v;
}

/// One object enriched over z2_values(); the unit and composition must share
/// the point `p`.
inline RawTableEnriched z2_monoid(const std::string& unit_point, const std::string& comp) {
   RawTableEnriched b;
   b.values = z2_values();
   b.objects = {"A"};
   b.hom = {{"A", "A", "*"}};
   b.comp = {{"A", "A", "A", comp}};
   b.ids = {{"A", unit_point}};
   return b;
}

inline Fn compose_fn(const Fn& g, const Fn& f) {
   Fn r{f.dom, g.cod, {}};
   for(std::size_t x : f.at) r.at.push_back(g.at[x]);
   return r;
}

/// Unique-filler count for every commuting square of (e, m), by brute force
/// over all functions A2 -> B1.
inline bool set_orthogonal(const Fn& e, const Fn& m) {
   std::vector<std::vector<std::size_t>> fillers;
   std::vector<std::size_t> w(e.cod, 0);
   const std::size_t total = [&] {
      std::size_t t = 1;
      for(std::size_t i = 0; i < e.cod; ++i) t *= m.dom;
      return t;
   }();
   for(std::size_t code = 0; code < total; ++code) {
      std::size_t rest = code;
      for(std::size_t i = 0; i < e.cod; ++i) {
         w[i] = rest % m.dom;
         rest /= m.dom;
      }
      fillers.push_back(w);
   }
   // squares: u: A1 -> B1, v: A2 -> B2 with m u = v e
   std::vector<std::size_t> u(e.dom, 0);
   std::vector<std::size_t> v(e.cod, 0);
   std::size_t nu = 1, nv = 1;
   for(std::size_t i = 0; i < e.dom; ++i) nu *= m.dom;
   for(std::size_t i = 0; i < e.cod; ++i) nv *= m.cod;
   for(std::size_t cu = 0; cu < nu; ++cu) {
      std::size_t r = cu;
      for(std::size_t i = 0; i < e.dom; ++i) {
         u[i] = r % m.dom;
         r /= m.dom;
      }
      for(std::size_t cv = 0; cv < nv; ++cv) {
         std::size_t q = cv;
         for(std::size_t i = 0; i < e.cod; ++i) {
            v[i] = q % m.cod;
            q /= m.cod;
         }
         bool commutes = true;
         for(std::size_t i = 0; i < e.dom; ++i) commutes = commutes && m.at[u[i]] == v[e.at[i]];
         if(!commutes) continue;
         std::size_t count = 0;
         for(const auto& f : fillers) {
            bool ok = true;
            for(std::size_t i = 0; i < e.dom; ++i) ok = ok && f[e.at[i]] == u[i];
            for(std::size_t i = 0; i < e.cod; ++i) ok = ok && m.at[f[i]] == v[i];
            count += ok ? 1 : 0;
         }
         if(count != 1) return false;
      }
   }
   return true;
}

/// Seeded generator for property tests.
struct Rng {
   std::mt19937_64 gen;
   explicit Rng(std::uint64_t seed) : gen(seed) {}
   std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen); }
};

}  // namespace fixtures

#endif
