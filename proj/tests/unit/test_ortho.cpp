// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <enrifact/error.hpp>
#include <enrifact/ortho.hpp>

#include <cstdlib>

#include "../support/fixtures.hpp"

using namespace enrifact;
using namespace fixtures;

namespace {

std::shared_ptr<const EnrichedCategory> shared(EnrichedCategory b) {
   return std::make_shared<const EnrichedCategory>(std::move(b));
}

MorphismClass by_fn(const FinCategory& c, bool (*pred)(const Fn&)) {
   MorphismClass k = MorphismClass::none(c.num_morphisms(), "oracle");
   for(MorId f = 0; f < c.num_morphisms(); ++f) k.members[f] = pred(parse_fn(c.morphism_name(f)));
   return k;
}

bool bijective(const Fn& f) {
   return injective(f) && surjective(f);
}

struct ThreadsEnv {
   explicit ThreadsEnv(const char* value) {
      if(value) ::setenv("ENRIFACT_THREADS", value, 1);
      else ::unsetenv("ENRIFACT_THREADS");
   }
   ~ThreadsEnv() { ::unsetenv("ENRIFACT_THREADS"); }
};

}  // namespace

TEST_CASE("finite sets: orthogonality agrees with the brute-force filler count") {
   const auto c = finset_upto(3);
   std::size_t orthogonal = 0;
   for(MorId e = 0; e < c.num_morphisms(); ++e) {
      for(MorId m = 0; m < c.num_morphisms(); ++m) {
         const bool expected = set_orthogonal(parse_fn(c.morphism_name(e)), parse_fn(c.morphism_name(m)));
         const Verdict v = is_orthogonal(c, e, m);
         INFO(c.morphism_name(e), " ", c.morphism_name(m));
         REQUIRE(v.holds == expected);
         orthogonal += expected ? 1 : 0;
         if(v.holds) {
            for(const auto& row : v.witness["fillers"]) {
               const MorId u = c.morphism(row[0].get<std::string>());
               const MorId b = c.morphism(row[1].get<std::string>());
               const MorId w = c.morphism(row[2].get<std::string>());
               CHECK(c.compose(w, e) == u);
               CHECK(c.compose(m, w) == b);
            }
         } else {
            const auto& sq = v.counterexample["square"];
            const MorId u = c.morphism(sq["top"].get<std::string>());
            const MorId b = c.morphism(sq["bottom"].get<std::string>());
            CHECK(c.compose(b, e) == c.compose(m, u));
            std::size_t fillers = 0;
            for(MorId w : c.hom(c.cod(e), c.dom(m))) fillers += c.compose(w, e) == u && c.compose(m, w) == b ? 1 : 0;
            CHECK(v.counterexample["fillers"].size() == fillers);
            CHECK(v.reason == (fillers == 0 ? "NoFiller" : "ManyFillers"));
         }
      }
   }
   CHECK(orthogonal > 0);
}

TEST_CASE("surjection against itself has a square without a filler") {
   const auto c = finset_upto(2);
   const MorId e = c.morphism("2>1:00");
   const Verdict v = is_orthogonal(c, e, e);
   CHECK_FALSE(v.holds);
   CHECK(v.reason == "NoFiller");
   // the empty map against a split surjection: the section is not unique
   const Verdict w = is_orthogonal(c, c.morphism("0>1:"), e);
   CHECK_FALSE(w.holds);
   CHECK(w.reason == "ManyFillers");
   CHECK(w.counterexample["fillers"] == Json::array({"1>2:0", "1>2:1"}));
}

TEST_CASE("chain over the two-element chain: orthogonality in both modes") {
   const auto b = EnrichedCategory::validate(chain_over_two(3));
   const auto& c = b.underlying();
   const MorId e = c.morphism("0->1");
   CHECK(is_orthogonal(c, e, c.morphism("1->2")).holds);
   CHECK(is_v_orthogonal(b, e, c.morphism("1->2")).holds);
   CHECK_FALSE(is_orthogonal(c, e, c.morphism("0->2")).holds);
   CHECK_FALSE(is_v_orthogonal(b, e, c.morphism("0->2")).holds);
   CHECK(is_v_orthogonal(b, e, c.morphism("1->2")).reason == "VOrthogonal");
}

TEST_CASE("enriched orthogonality can be strictly stronger") {
   const auto b = EnrichedCategory::validate(strict_gap());
   const auto& c = b.underlying();
   const MorId e = c.morphism("c->a");
   const MorId m = c.morphism("c->b");
   const Verdict ord = is_orthogonal(c, e, m);
   CHECK(ord.holds);
   CHECK(ord.witness["fillers"].empty());
   CHECK_FALSE(is_v_orthogonal(b, e, m).holds);
}

TEST_CASE("finite sets: surjections and injections determine each other") {
   const Workspace ws(shared(finset_enriched(3)));
   const auto& c = ws.underlying();
   const auto inj = by_fn(c, injective);
   const auto surj = by_fn(c, surjective);
   for(Mode mode : {Mode::ordinary, Mode::enriched}) {
      INFO(to_string(mode));
      CHECK(right_class(ws, surj, mode) == inj);
      CHECK(left_class(ws, inj, mode) == surj);
      CHECK(right_class(ws, ws.all(), mode) == by_fn(c, bijective));
      CHECK(left_class(ws, ws.all(), mode) == by_fn(c, bijective));
      CHECK(is_prefactorization_system(ws, surj, inj, mode).holds);
      const Verdict swapped = is_prefactorization_system(ws, inj, surj, mode);
      CHECK_FALSE(swapped.holds);
      CHECK(swapped.reason == "RightClassMismatch");
   }
   CHECK(ws.monos() == inj);
   CHECK(ws.epis() == surj);
   CHECK(ws.v_monos() == inj);
   CHECK(ws.v_regular_epis() == surj);
   CHECK(ws.isos() == by_fn(c, bijective));
}

TEST_CASE("prefactorization mismatch names a partner") {
   const Workspace ws(shared(finset_enriched(2)));
   const auto& c = ws.underlying();
   const Verdict v = is_prefactorization_system(ws, ws.monos(), ws.epis(), Mode::ordinary);
   REQUIRE_FALSE(v.holds);
   const MorId f = c.morphism(v.counterexample["morphism"].get<std::string>());
   if(v.counterexample.contains("partner")) {
      const MorId p = c.morphism(v.counterexample["partner"].get<std::string>());
      CHECK_FALSE(is_orthogonal(c, p, f).holds);
   } else {
      for(MorId e : ws.monos().ids()) CHECK(is_orthogonal(c, e, f).holds);
   }
}

TEST_CASE("closures are prefactorization systems containing the seed") {
   const Workspace ws(shared(finset_enriched(2)));
   const auto& c = ws.underlying();
   Rng rng(7031);
   for(int trial = 0; trial < 40; ++trial) {
      MorphismClass seed = MorphismClass::none(c.num_morphisms(), "random");
      for(MorId f = 0; f < c.num_morphisms(); ++f) seed.members[f] = rng.below(4) == 0;
      for(Side side : {Side::left, Side::right}) {
         for(Mode mode : {Mode::ordinary, Mode::enriched}) {
            const auto p = prefactorization_closure(ws, seed, side, mode);
            CHECK(is_prefactorization_system(ws, p.left, p.right, mode).holds);
            CHECK(seed.subset_of(side == Side::right ? p.left : p.right));
            CHECK(ws.isos().subset_of(p.left));
            CHECK(ws.isos().subset_of(p.right));
            // closing again changes nothing
            const auto q = prefactorization_closure(ws, side == Side::right ? p.left : p.right, side, mode);
            CHECK(q.left == p.left);
            CHECK(q.right == p.right);
         }
      }
   }
}

TEST_CASE("enriched orthogonality implies ordinary orthogonality") {
   const std::vector<RawTableEnriched> raws{chain_over_two(4), product_gap(), strict_gap()};
   for(const auto& raw : raws) {
      const Workspace ws(shared(EnrichedCategory::validate(raw)));
      for(MorId e = 0; e < ws.size(); ++e) {
         for(MorId m = 0; m < ws.size(); ++m) {
            if(ws.orthogonal(e, m, Mode::enriched)) CHECK(ws.orthogonal(e, m, Mode::ordinary));
            CHECK(ws.orthogonal(e, m, Mode::ordinary) == is_orthogonal(ws.underlying(), e, m).holds);
            CHECK(ws.orthogonal(e, m, Mode::enriched) == is_v_orthogonal(ws.category(), e, m).holds);
         }
      }
   }
}

TEST_CASE("worker count comes from the environment") {
   {
      const ThreadsEnv env("3");
      CHECK(worker_count() == 3);
   }
   for(const char* bad : {"0", "abc", "", "-2", "2x"}) {
      const ThreadsEnv env(bad);
      CHECK_THROWS_AS(worker_count(), Error);
   }
   {
      const ThreadsEnv env(nullptr);
      CHECK(worker_count() >= 1);
   }
}

TEST_CASE("relations do not depend on the worker count") {
   std::vector<bool> one;
   std::vector<bool> many;
   for(const char* threads : {"1", "4"}) {
      const ThreadsEnv env(threads);
      const Workspace ws(shared(finset_enriched(2)));
      auto& out = std::string(threads) == "1" ? one : many;
      for(MorId e = 0; e < ws.size(); ++e)
         for(MorId m = 0; m < ws.size(); ++m) {
            out.push_back(ws.orthogonal(e, m, Mode::ordinary));
            out.push_back(ws.orthogonal(e, m, Mode::enriched));
         }
   }
   CHECK(one == many);
}

TEST_CASE("class construction") {
   const auto c = finset_upto(1);
   const std::vector<std::string> ids{"1>1:0"};
   const auto k = MorphismClass::from_ids(c, ids, "given");
   CHECK(k.size() == 1);
   CHECK(to_json(c, k) == Json::array({"1>1:0"}));
   const std::vector<std::string> bad{"9>9:0"};
   CHECK_THROWS_AS(MorphismClass::from_ids(c, bad, "given"), Error);
}
