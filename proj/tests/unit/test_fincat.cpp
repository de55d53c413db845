// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <enrifact/error.hpp>
#include <enrifact/fincat.hpp>

#include "../support/fixtures.hpp"

using namespace enrifact;
using namespace fixtures;

namespace {

ErrorCode validation_error(const RawCategory& raw) {
   try {
      FinCategory::validate(raw);
   } catch(const Error& e) {
      return e.code();
   }
   FAIL("expected a validation error");
   return ErrorCode::UsageError;
}

void erase_entry(RawCategory& raw, const std::string& g, const std::string& f) {
   std::erase_if(raw.compose, [&](const auto& e) { return e[0] == g && e[1] == f; });
}

}  // namespace

TEST_CASE("walking arrow validates and classifies") {
   const auto c = FinCategory::validate(walking_arrow());
   CHECK(c.num_objects() == 2);
   CHECK(c.num_morphisms() == 3);
   const MorId a = c.morphism("a");
   const auto flags = classify_morphism(c, a);
   CHECK(flags.mono);
   CHECK(flags.epi);
   CHECK_FALSE(flags.iso);
   CHECK_FALSE(flags.section);
   CHECK_FALSE(flags.retraction);
   CHECK(to_json(flags) == Json::array({"epi", "mono"}));
}

TEST_CASE("broken identity law is reported") {
   auto raw = walking_arrow();
   erase_entry(raw, "a", "id0");
   raw.compose.push_back({"a", "id0", "id1"});
   CHECK(validation_error(raw) == ErrorCode::IdentityViolation);
}

TEST_CASE("validation errors by kind") {
   SUBCASE("duplicate object") {
      auto raw = walking_arrow();
      raw.objects.push_back("0");
      CHECK(validation_error(raw) == ErrorCode::DuplicateID);
   }
   SUBCASE("duplicate morphism") {
      auto raw = walking_arrow();
      raw.morphisms.push_back({"a", "0", "1"});
      CHECK(validation_error(raw) == ErrorCode::DuplicateID);
   }
   SUBCASE("dangling object") {
      auto raw = walking_arrow();
      raw.morphisms.push_back({"b", "0", "7"});
      CHECK(validation_error(raw) == ErrorCode::DanglingID);
   }
   SUBCASE("missing identity") {
      auto raw = walking_arrow();
      raw.identities.erase("1");
      CHECK(validation_error(raw) == ErrorCode::IdentityViolation);
   }
   SUBCASE("missing composite") {
      auto raw = walking_arrow();
      erase_entry(raw, "id1", "a");
      CHECK(validation_error(raw) == ErrorCode::MissingComposite);
   }
   SUBCASE("entry for non-composable pair") {
      auto raw = walking_arrow();
      raw.compose.push_back({"a", "a", "a"});
      CHECK(validation_error(raw) == ErrorCode::NonComposableEntry);
   }
   SUBCASE("ill-typed composite") {
      RawCategory raw;
      raw.objects = {"0", "1"};
      raw.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"a", "0", "1"}, {"b", "1", "0"}};
      raw.identities = {{"0", "id0"}, {"1", "id1"}};
      raw.compose = {{"id0", "id0", "id0"}, {"id1", "id1", "id1"}, {"a", "id0", "a"}, {"id1", "a", "a"},
                     {"b", "id1", "b"},     {"id0", "b", "b"},     {"a", "b", "id0"}, {"b", "a", "id0"}};
      CHECK(validation_error(raw) == ErrorCode::TypeMismatch);
   }
   SUBCASE("non-associative table") {
      // one object, elements e, a, b with a.a = b, a.b = a, b.a = b, b.b = a
      RawCategory raw;
      raw.objects = {"*"};
      raw.morphisms = {{"e", "*", "*"}, {"a", "*", "*"}, {"b", "*", "*"}};
      raw.identities = {{"*", "e"}};
      raw.compose = {{"e", "e", "e"}, {"e", "a", "a"}, {"e", "b", "b"}, {"a", "e", "a"}, {"b", "e", "b"},
                     {"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "a"}};
      CHECK(validation_error(raw) == ErrorCode::AssociativityViolation);
   }
}

TEST_CASE("finite sets: predicates agree with function oracles") {
   const auto c = finset_upto(3);
   CHECK(c.num_objects() == 4);
   CHECK(c.num_morphisms() == 60);
   for(MorId f = 0; f < c.num_morphisms(); ++f) {
      const Fn fn = parse_fn(c.morphism_name(f));
      const auto flags = classify_morphism(c, f);
      INFO(c.morphism_name(f));
      CHECK(flags.mono == injective(fn));
      CHECK(flags.epi == surjective(fn));
      CHECK(flags.iso == (injective(fn) && surjective(fn)));
      // a left inverse needs somewhere to send the codomain
      CHECK(flags.section == (injective(fn) && (fn.dom > 0 || fn.cod == 0)));
      CHECK(flags.retraction == surjective(fn));
   }
}

TEST_CASE("pullback squares agree with the fibre-pair oracle") {
   const auto c = finset_upto(3);
   Rng rng(20240611);
   std::size_t checked = 0;
   std::size_t pullbacks = 0;
   while(checked < 1500) {
      const MorId h = rng.below(c.num_morphisms());
      const ObjId z = c.cod(h);
      const ObjId y = rng.below(c.num_objects());
      const auto ks = c.hom(y, z);
      if(ks.empty()) continue;
      const MorId k = ks[rng.below(ks.size())];
      const auto pairs = fibre_pairs(parse_fn(c.morphism_name(h)), parse_fn(c.morphism_name(k)));
      MorId f = no_id;
      MorId g = no_id;
      if(rng.below(2) == 0 && pairs.size() <= 3) {
         // half the samples use the fibre-product projections, possibly permuted
         std::string fs = std::to_string(pairs.size()) + ">" + c.object_name(c.dom(h)) + ":";
         std::string gs = std::to_string(pairs.size()) + ">" + c.object_name(y) + ":";
         auto order = pairs;
         if(order.size() > 1 && rng.below(2) == 0) std::swap(order.front(), order.back());
         if(order.size() > 1 && rng.below(3) == 0) order.back() = order.front();
         for(const auto& [x, w] : order) {
            fs += static_cast<char>('0' + x);
            gs += static_cast<char>('0' + w);
         }
         f = c.morphism(fs);
         g = c.morphism(gs);
      } else {
         const ObjId p = rng.below(c.num_objects());
         const auto fs = c.hom(p, c.dom(h));
         const auto gs = c.hom(p, y);
         if(fs.empty() || gs.empty()) continue;
         f = fs[rng.below(fs.size())];
         g = gs[rng.below(gs.size())];
      }
      const Square sq{f, g, h, k};
      if(!commutes(c, sq)) continue;
      ++checked;
      const bool expected = set_pullback(parse_fn(c.morphism_name(f)), parse_fn(c.morphism_name(g)),
                                         parse_fn(c.morphism_name(h)), parse_fn(c.morphism_name(k)));
      const Verdict v = is_pullback_square(c, sq);
      CHECK(v.holds == expected);
      pullbacks += expected ? 1 : 0;
   }
   CHECK(pullbacks > 0);
}

TEST_CASE("non-commuting square is rejected") {
   const auto c = finset_upto(2);
   const MorId f = c.morphism("1>2:0");
   const MorId h = c.morphism("2>2:01");
   const MorId g = c.morphism("1>2:1");
   CHECK_THROWS_AS(is_pullback_square(c, Square{f, g, h, h}), Error);
}

TEST_CASE("cospan limits exist exactly when the fibre product fits") {
   const auto c = finset_upto(3);
   for(MorId h = 0; h < c.num_morphisms(); ++h) {
      for(MorId k = 0; k < c.num_morphisms(); ++k) {
         if(c.cod(h) != c.cod(k)) continue;
         const auto pairs = fibre_pairs(parse_fn(c.morphism_name(h)), parse_fn(c.morphism_name(k)));
         const auto cone = limit_cone(c, Diagram::cospan(c, h, k));
         INFO(c.morphism_name(h), " ", c.morphism_name(k));
         REQUIRE(cone.has_value() == (pairs.size() <= 3));
         if(cone) {
            CHECK(c.object_name(cone->apex) == std::to_string(pairs.size()));
            CHECK(is_limit_cone(c, Diagram::cospan(c, h, k), *cone).holds);
         }
      }
   }
}

TEST_CASE("binary products and kernel pairs") {
   const auto c = finset_upto(3);
   for(ObjId a = 0; a < c.num_objects(); ++a) {
      for(ObjId b = 0; b < c.num_objects(); ++b) {
         const std::array<ObjId, 2> objs{a, b};
         const auto cone = limit_cone(c, Diagram::discrete(objs));
         const std::size_t size = std::stoul(c.object_name(a)) * std::stoul(c.object_name(b));
         CHECK(cone.has_value() == (size <= 3));
      }
   }
   CHECK_FALSE(kernel_pair(c, c.morphism("2>1:00")).has_value());
   const auto kp = kernel_pair(c, c.morphism("2>2:01"));
   REQUIRE(kp.has_value());
   CHECK(c.object_name(kp->apex) == "2");
   CHECK(kp->pi1 == kp->pi2);
}

TEST_CASE("limit cone failure names the competing cone") {
   const auto c = finset_upto(2);
   // the cone (1 -> 2 twice) over the discrete pair (2, 2) is not a product
   const std::array<ObjId, 2> objs{c.object("2"), c.object("2")};
   const Diagram d = Diagram::discrete(objs);
   const Cone cone{c.object("1"), {c.morphism("1>2:0"), c.morphism("1>2:0")}};
   const Verdict v = is_limit_cone(c, d, cone);
   CHECK_FALSE(v.holds);
   CHECK(v.counterexample.contains("object"));
   CHECK_THROWS_AS(is_limit_cone(c, d, Cone{c.object("1"), {c.morphism("1>2:0")}}), Error);
}

TEST_CASE("opposite is an involution and swaps mono with epi") {
   const auto c = finset_upto(2);
   const auto op = c.opposite();
   CHECK(op.opposite().to_raw().compose == c.to_raw().compose);
   for(MorId f = 0; f < c.num_morphisms(); ++f) {
      const auto a = classify_morphism(c, f);
      const auto b = classify_morphism(op, f);
      CHECK(a.mono == b.epi);
      CHECK(a.epi == b.mono);
      CHECK(a.section == b.retraction);
   }
}

TEST_CASE("mediators of the identity cone") {
   const auto c = FinCategory::validate(commutative_square());
   const Diagram d = Diagram::cospan(c, c.morphism("1<3"), c.morphism("2<3"));
   const auto cone = limit_cone(c, d);
   REQUIRE(cone.has_value());
   CHECK(c.object_name(cone->apex) == "0");
   CHECK(mediators(c, *cone, *cone) == std::vector<MorId>{c.identity(cone->apex)});
}
