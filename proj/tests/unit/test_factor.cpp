// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <enrifact/error.hpp>
#include <enrifact/factor.hpp>

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

/// Image factorization with the image listed in increasing order.
std::pair<std::string, std::string> image_factorization(const Fn& g) {
   const std::set<std::size_t> image(g.at.begin(), g.at.end());
   const std::vector<std::size_t> sorted(image.begin(), image.end());
   const std::string k = std::to_string(sorted.size());
   std::string e = std::to_string(g.dom) + ">" + k + ":";
   for(std::size_t x : g.at) e += static_cast<char>('0' + (std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()));
   std::string m = k + ">" + std::to_string(g.cod) + ":";
   for(std::size_t y : sorted) m += static_cast<char>('0' + y);
   return {e, m};
}

/// For a category enriched over a chain quantale, hom squares are pullbacks
/// exactly when the top-left hom is the meet of its neighbours.
bool chain_orthogonal(const EnrichedCategory& b, MorId e, MorId m) {
   const FinCategory& c = b.underlying();
   const auto h = [&](ObjId x, ObjId y) { return std::stoul(b.values().base().object_name(b.hom_object(x, y))); };
   const ObjId a1 = c.dom(e), a2 = c.cod(e), b1 = c.dom(m), b2 = c.cod(m);
   return h(a2, b1) == std::min(h(a2, b2), h(a1, b1));
}

ErrorCode error_of(const std::function<void()>& f) {
   try {
      f();
   } catch(const Error& e) {
      return e.code();
   }
   FAIL("expected an error");
   return ErrorCode::UsageError;
}

}  // namespace

TEST_CASE("finite sets: wide-intersection factorization is the image factorization") {
   const Workspace ws(shared(finset_enriched(3)));
   const auto& c = ws.underlying();
   const auto inj = by_fn(c, injective);
   const auto all = factorize_all_via_intersection(ws, inj);
   REQUIRE(all.size() == 60);
   for(MorId g = 0; g < c.num_morphisms(); ++g) {
      const auto [e, m] = image_factorization(parse_fn(c.morphism_name(g)));
      INFO(c.morphism_name(g));
      CHECK(c.morphism_name(all[g].e) == e);
      CHECK(c.morphism_name(all[g].m) == m);
      CHECK(c.compose(all[g].m, all[g].e) == g);
   }
   const auto one = factorize_via_intersection(ws, c.morphism("2>3:00"), inj);
   CHECK(c.morphism_name(one.e) == "2>1:00");
   CHECK(c.morphism_name(one.m) == "1>3:0");
   for(MorId g : inj.ids()) {
      CHECK(ws.flags()[all[g].e].iso);
   }
   for(ObjId x = 0; x < c.num_objects(); ++x) {
      const auto f = all[c.identity(x)];
      CHECK(ws.flags()[f.e].iso);
      CHECK(ws.flags()[f.m].iso);
   }
}

TEST_CASE("hypotheses of the construction fail with the broken one named") {
   const Workspace ws(shared(finset_enriched(3)));
   const auto& c = ws.underlying();
   const auto inj = by_fn(c, injective);
   SUBCASE("isos") {
      auto m = inj;
      m.members[c.morphism("2>2:10")] = false;
      const Verdict v = intersection_hypotheses(ws, m);
      CHECK(v.reason == "HypothesisFailed(isos)");
      CHECK(error_of([&] { factorize_via_intersection(ws, 0, m); }) == ErrorCode::HypothesisFailed);
   }
   SUBCASE("composition") {
      auto m = by_fn(c, [](const Fn& f) { return injective(f) && surjective(f); });
      m.members[c.morphism("1>2:0")] = true;
      m.members[c.morphism("2>3:01")] = true;
      const Verdict v = intersection_hypotheses(ws, m);
      CHECK(v.reason == "HypothesisFailed(iii)");
   }
   SUBCASE("non-monos") {
      const Verdict v = intersection_hypotheses(ws, ws.all());
      CHECK(v.reason == "InductionFailure");
      CHECK(error_of([&] { factorize_via_intersection(ws, 0, ws.all()); }) == ErrorCode::InductionFailure);
   }
   SUBCASE("missing pullback") {
      const Workspace gap(shared(EnrichedCategory::validate(finset_category({0, 1, 3}))));
      const auto& g = gap.underlying();
      const Verdict v = intersection_hypotheses(gap, by_fn(g, injective));
      CHECK(v.reason == "HypothesisFailed(ii)");
      CHECK(v.counterexample["issue"] == "NoPullback");
      // the fibre of the along-map over the image of m has two elements
      const Fn m = parse_fn(v.counterexample["cospan"]["m"]);
      const Fn along = parse_fn(v.counterexample["cospan"]["along"]);
      CHECK(fibre_pairs(m, along).size() == 2);
   }
}

TEST_CASE("finite sets: canonical systems coincide with surjections and injections") {
   const Workspace ws(shared(finset_enriched(3)));
   const auto& c = ws.underlying();
   const auto inj = by_fn(c, injective);
   const auto surj = by_fn(c, surjective);
   CHECK(strong_mono_class(ws) == inj);
   CHECK(strong_mono_class(ws, Mode::ordinary) == inj);
   CHECK(strong_epi_class(ws) == surj);
   CHECK(ws.v_regular_monos().subset_of(strong_mono_class(ws)));
   const auto r = canonical_systems(ws);
   REQUIRE(r.epi_strong_mono.system.has_value());
   REQUIRE(r.strong_epi_mono.system.has_value());
   CHECK(r.coincide);
   CHECK(r.epi_strong_mono.left == surj);
   CHECK(r.epi_strong_mono.right == inj);
   for(MorId g = 0; g < c.num_morphisms(); ++g) {
      const auto [e, m] = image_factorization(parse_fn(c.morphism_name(g)));
      CHECK(c.morphism_name(r.strong_epi_mono.system->factorizer[g].e) == e);
      CHECK(c.morphism_name(r.strong_epi_mono.system->factorizer[g].m) == m);
   }
}

TEST_CASE("any two factorizations are compared by an iso filler") {
   const Workspace ws(shared(finset_enriched(3)));
   const auto& c = ws.underlying();
   const auto inj = by_fn(c, injective);
   const auto surj = by_fn(c, surjective);
   std::size_t compared = 0;
   for(MorId f = 0; f < c.num_morphisms(); ++f) {
      std::vector<Factorization> fs;
      for(MorId e : surj.ids())
         for(MorId m : inj.ids())
            if(c.dom(e) == c.dom(f) && c.cod(e) == c.dom(m) && c.cod(m) == c.cod(f) && c.compose(m, e) == f) fs.push_back({e, m});
      REQUIRE_FALSE(fs.empty());
      for(const auto& x : fs) {
         for(const auto& y : fs) {
            const Verdict v = is_orthogonal(c, x.e, y.m);
            REQUIRE(v.holds);
            bool found = false;
            for(const auto& row : v.witness["fillers"]) {
               if(row[0] == c.morphism_name(y.e) && row[1] == c.morphism_name(x.m)) {
                  CHECK(ws.flags()[c.morphism(row[2].get<std::string>())].iso);
                  found = true;
               }
            }
            CHECK(found);
            ++compared;
         }
      }
   }
   CHECK(compared >= 60);
}

TEST_CASE("factorization system checks") {
   const Workspace fin(shared(finset_enriched(3)));
   const auto& c = fin.underlying();
   const auto inj = by_fn(c, injective);
   const auto surj = by_fn(c, surjective);
   CHECK(is_factorization_system(fin, surj, inj, Mode::enriched).holds);
   CHECK(is_factorization_system(fin, inj, surj, Mode::ordinary).reason == "NotOrthogonal");
   auto not_closed = surj;
   not_closed.members[c.morphism("2>2:10")] = false;
   CHECK(is_factorization_system(fin, not_closed, inj, Mode::ordinary).reason == "NotIsoClosed");

   const std::vector<RawTableEnriched> raws{chain_over_two(3), chain_over_two(4), product_gap()};
   for(const auto& raw : raws) {
      const Workspace ws(shared(EnrichedCategory::validate(raw)));
      for(Mode mode : {Mode::ordinary, Mode::enriched}) {
         CHECK(is_factorization_system(ws, ws.isos(), ws.all(), mode).holds);
         CHECK(is_factorization_system(ws, ws.all(), ws.isos(), mode).holds);
      }
   }
   // in a chain every arrow is mono and epi, and 0->1 does not lift against 0->2
   const Workspace chain(shared(EnrichedCategory::validate(chain_over_two(3))));
   const Verdict v = is_factorization_system(chain, chain.epis(), chain.monos(), Mode::ordinary);
   CHECK(v.reason == "NotOrthogonal");
}

TEST_CASE("enriched certification is ordinary certification plus enriched orthogonality") {
   const std::vector<RawTableEnriched> raws{chain_over_two(3), product_gap()};
   Rng rng(4471);
   for(const auto& raw : raws) {
      const Workspace ws(shared(EnrichedCategory::validate(raw)));
      std::vector<std::pair<MorphismClass, MorphismClass>> pairs{{ws.isos(), ws.all()}, {ws.all(), ws.isos()}};
      for(int i = 0; i < 30; ++i) {
         MorphismClass seed = MorphismClass::none(ws.size(), "random");
         for(MorId f = 0; f < ws.size(); ++f) seed.members[f] = rng.below(3) == 0;
         for(Mode mode : {Mode::ordinary, Mode::enriched}) {
            const auto p = prefactorization_closure(ws, seed, i % 2 ? Side::left : Side::right, mode);
            pairs.emplace_back(p.left, p.right);
         }
      }
      for(const auto& [E, M] : pairs) {
         bool pairwise = true;
         for(MorId e : E.ids())
            for(MorId m : M.ids()) pairwise = pairwise && is_v_orthogonal(ws.category(), e, m).holds;
         CHECK(is_factorization_system(ws, E, M, Mode::enriched).holds ==
               (is_factorization_system(ws, E, M, Mode::ordinary).holds && pairwise));
      }
   }
}

TEST_CASE("chain quantale categories: strong monos match the meet oracle") {
   const std::vector<RawTableEnriched> raws{chain_over_two(3), chain_over_two(4), product_gap()};
   for(const auto& raw : raws) {
      const Workspace ws(shared(EnrichedCategory::validate(raw)));
      const auto& b = ws.category();
      MorphismClass expected = MorphismClass::none(ws.size(), "oracle");
      for(MorId m = 0; m < ws.size(); ++m) {
         bool strong = true;
         for(MorId e = 0; e < ws.size(); ++e) strong = strong && chain_orthogonal(b, e, m);
         expected.members[m] = strong;
         for(MorId e = 0; e < ws.size(); ++e) CHECK(ws.orthogonal(e, m, Mode::enriched) == chain_orthogonal(b, e, m));
      }
      // every morphism of a V-category over a poset is V-mono and V-epi
      CHECK(ws.v_monos() == ws.all());
      CHECK(ws.v_epis() == ws.all());
      const auto strong = strong_mono_class(ws);
      CHECK(strong == expected);
      CHECK(ws.v_regular_monos().subset_of(strong));
      CHECK(strong.subset_of(ws.v_monos()));
      CHECK(ws.v_monos().subset_of(ws.monos()));
      const auto r = canonical_systems(ws);
      if(r.epi_strong_mono.system) {
         CHECK(is_prefactorization_system(ws, r.epi_strong_mono.left, r.epi_strong_mono.right, Mode::enriched).holds);
      }
   }
}

TEST_CASE("finite well-completeness reports") {
   const Workspace chain(shared(EnrichedCategory::validate(chain_over_two(3))));
   const auto good = check_fwc(chain);
   CHECK(good.has_finite_v_limits);
   CHECK(good.has_strong_mono_v_intersections);
   CHECK(good.missing_limit.is_null());

   const Workspace point(shared(EnrichedCategory::validate(chain_over_two(1))));
   CHECK(check_fwc(point).has_finite_v_limits);

   const Workspace fin(shared(finset_enriched(3)));
   const auto bad = check_fwc(fin);
   CHECK_FALSE(bad.has_finite_v_limits);
   CHECK(bad.missing_limit["shape"] == "product");
   CHECK(bad.missing_limit["issue"] == "NoLimit");
   CHECK(bad.has_strong_mono_v_intersections);
   const Json json = to_json(bad);
   CHECK(json["has_finite_v_limits"] == false);
}
