// SPDX-License-Identifier: Apache-2.0

#include <enrifact/error.hpp>
#include <enrifact/factor.hpp>

#include <stdexcept>

namespace enrifact {

namespace {

constexpr std::size_t max_subobjects = 20;

bool factors_through(const FinCategory& c, MorId f, MorId m) {
   for(MorId x : c.hom(c.dom(f), c.dom(m))) {
      if(c.compose(m, x) == f) return true;
   }
   return false;
}

/// One member of `k` per subobject of `b`, least ID first.
std::vector<MorId> subobject_representatives(const FinCategory& c, const MorphismClass& k, ObjId b) {
   std::vector<MorId> reps;
   for(MorId m : k.ids()) {
      if(c.cod(m) != b) continue;
      const bool seen = std::any_of(reps.begin(), reps.end(),
                                    [&](MorId r) { return factors_through(c, m, r) && factors_through(c, r, m); });
      if(!seen) reps.push_back(m);
   }
   return reps;
}

Json names(const FinCategory& c, const std::vector<MorId>& fs) {
   Json out = Json::array();
   for(MorId f : fs) out.push_back(c.morphism_name(f));
   return out;
}

/// Calls `f(codomain, family)` for every subset of representatives into every
/// object, stopping at the first non-null result.
template <typename F>
Json for_each_family(const FinCategory& c, const MorphismClass& k, F&& f) {
   for(ObjId b = 0; b < c.num_objects(); ++b) {
      const auto reps = subobject_representatives(c, k, b);
      if(reps.size() > max_subobjects) {
         throw Error(ErrorCode::UsageError, "too many subobjects of " + c.object_name(b) + " to enumerate families");
      }
      std::vector<MorId> family;
      for(std::uint64_t mask = 0; mask < (std::uint64_t{1} << reps.size()); ++mask) {
         family.clear();
         for(std::size_t i = 0; i < reps.size(); ++i) {
            if(mask & (std::uint64_t{1} << i)) family.push_back(reps[i]);
         }
         Json r = f(b, family);
         if(!r.is_null()) return r;
      }
   }
   return nullptr;
}

Json intersection_issue(const Workspace& ws, ObjId b, const std::vector<MorId>& family, const MorphismClass* land_in) {
   const FinCategory& c = ws.underlying();
   const auto cex = [&](const char* issue) {
      return Json{{"codomain", c.object_name(b)}, {"family", names(c, family)}, {"issue", issue}};
   };
   Intersection in;
   try {
      in = v_intersection(ws.category(), b, family);
   } catch(const Error& e) {
      if(e.code() != ErrorCode::FamilyNotMono) throw;
      return cex("NotVMono");
   }
   if(in.status == Intersection::Status::absent) return cex("NoIntersection");
   if(in.status == Intersection::Status::not_v_limit) return cex("NotVLimit");
   if(land_in && !land_in->contains(in.morphism)) {
      Json out = cex("IntersectionNotInClass");
      out["intersection"] = c.morphism_name(in.morphism);
      return out;
   }
   return nullptr;
}

Verdict hypothesis_failure(const std::string& which, Json cex) {
   cex["hypothesis"] = which;
   return Verdict::fail("HypothesisFailed(" + which + ")", std::move(cex));
}

Factorization factor_one(const Workspace& ws, MorId g, const MorphismClass& M) {
   const FinCategory& c = ws.underlying();
   const ObjId src = c.dom(g);
   const ObjId b = c.cod(g);
   std::vector<MorId> family;
   std::vector<MorId> through;
   for(MorId m : M.ids()) {
      if(c.cod(m) != b) continue;
      std::vector<MorId> gm;
      for(MorId x : c.hom(src, c.dom(m))) {
         if(c.compose(m, x) == g) gm.push_back(x);
      }
      if(gm.size() > 1) {
         throw Error(ErrorCode::InductionFailure, c.morphism_name(g) + " factors through " + c.morphism_name(m) + " in " +
                                                     std::to_string(gm.size()) + " ways");
      }
      if(gm.size() == 1) {
         family.push_back(m);
         through.push_back(gm.front());
      }
   }
   const Intersection in = v_intersection(ws.category(), b, family);
   if(in.status != Intersection::Status::found) {
      throw Error(ErrorCode::IntersectionMissing, "no V-intersection of the " + std::to_string(family.size()) +
                                                     " M-morphisms through which " + c.morphism_name(g) + " factors");
   }
   const MorId m0 = in.morphism;
   MorId e = no_id;
   for(MorId x : c.hom(src, in.cone->apex)) {
      if(c.compose(m0, x) != g) continue;
      bool projections = true;
      for(std::size_t i = 0; i < family.size(); ++i) projections = projections && c.compose(in.cone->legs[i + 1], x) == through[i];
      if(projections) {
         e = x;
         break;
      }
   }
   if(e == no_id) {
      throw std::logic_error("intersection does not receive " + c.morphism_name(g));
   }
   if(!M.contains(m0)) {
      throw std::logic_error("intersection " + c.morphism_name(m0) + " left the right class");
   }
   for(MorId m : M.ids()) {
      if(!ws.orthogonal(e, m, Mode::ordinary)) {
         throw std::logic_error("factor " + c.morphism_name(e) + " is not orthogonal to " + c.morphism_name(m));
      }
   }
   return {e, m0};
}

}  // namespace

Verdict intersection_hypotheses(const Workspace& ws, const MorphismClass& M) {
   const FinCategory& c = ws.underlying();
   const auto& flags = ws.flags();
   for(MorId f = 0; f < ws.size(); ++f) {
      if(flags[f].iso && !M.contains(f)) {
         return hypothesis_failure("isos", {{"morphism", c.morphism_name(f)}});
      }
   }
   for(MorId m : M.ids()) {
      if(flags[m].mono) continue;
      for(ObjId x = 0; x < c.num_objects(); ++x) {
         const auto hs = c.hom(x, c.dom(m));
         for(std::size_t i = 0; i < hs.size(); ++i) {
            for(std::size_t j = i + 1; j < hs.size(); ++j) {
               if(c.compose(m, hs[i]) == c.compose(m, hs[j])) {
                  return Verdict::fail("InductionFailure", {{"morphism", c.morphism_name(c.compose(m, hs[i]))},
                                                            {"through", c.morphism_name(m)},
                                                            {"factors", Json::array({c.morphism_name(hs[i]), c.morphism_name(hs[j])})}});
               }
            }
         }
      }
   }
   for(MorId m1 : M.ids()) {
      for(MorId m2 : M.ids()) {
         if(c.dom(m2) != c.cod(m1)) continue;
         const MorId k = c.compose(m2, m1);
         if(!M.contains(k)) {
            return hypothesis_failure("iii", {{"first", c.morphism_name(m1)}, {"second", c.morphism_name(m2)}, {"composite", c.morphism_name(k)}});
         }
      }
   }
   for(MorId m : M.ids()) {
      for(MorId g = 0; g < ws.size(); ++g) {
         if(c.cod(g) != c.cod(m)) continue;
         const Diagram d = Diagram::cospan(c, m, g);
         Json cex{{"cospan", {{"m", c.morphism_name(m)}, {"along", c.morphism_name(g)}}}};
         const auto cone = limit_cone(c, d);
         if(!cone) {
            cex["issue"] = "NoPullback";
            return hypothesis_failure("ii", cex);
         }
         if(!is_v_limit(ws.category(), d, *cone).holds) {
            cex["issue"] = "NotVLimit";
            return hypothesis_failure("ii", cex);
         }
         if(!M.contains(cone->legs[2])) {
            cex["issue"] = "PullbackNotInClass";
            cex["pullback"] = c.morphism_name(cone->legs[2]);
            return hypothesis_failure("ii", cex);
         }
      }
   }
   Json bad = for_each_family(c, M, [&](ObjId b, const std::vector<MorId>& family) { return intersection_issue(ws, b, family, &M); });
   if(!bad.is_null()) {
      return hypothesis_failure("i", bad);
   }
   return Verdict::pass("HypothesesHold");
}

namespace {

void require_hypotheses(const Workspace& ws, const MorphismClass& M) {
   const Verdict v = intersection_hypotheses(ws, M);
   if(v.holds) return;
   const ErrorCode code = v.reason == "InductionFailure" ? ErrorCode::InductionFailure : ErrorCode::HypothesisFailed;
   throw Error(code, v.reason + " " + v.counterexample.dump());
}

}  // namespace

Factorization factorize_via_intersection(const Workspace& ws, MorId g, const MorphismClass& M) {
   if(g >= ws.size()) {
      throw Error(ErrorCode::DanglingID, "factorization of an unknown morphism");
   }
   require_hypotheses(ws, M);
   return factor_one(ws, g, M);
}

std::vector<Factorization> factorize_all_via_intersection(const Workspace& ws, const MorphismClass& M) {
   require_hypotheses(ws, M);
   std::vector<Factorization> out;
   for(MorId g = 0; g < ws.size(); ++g) out.push_back(factor_one(ws, g, M));
   return out;
}

// ---------------------------------------------------------------------------
// systems

Json to_json(const FinCategory& c, const FactorizationSystem& s) {
   Json fz = Json::array();
   for(MorId f = 0; f < s.factorizer.size(); ++f) {
      fz.push_back({{"morphism", c.morphism_name(f)},
                    {"e", c.morphism_name(s.factorizer[f].e)},
                    {"m", c.morphism_name(s.factorizer[f].m)}});
   }
   return {{"left", to_json(c, s.left)}, {"right", to_json(c, s.right)}, {"mode", to_string(s.mode)}, {"factorizer", fz}};
}

namespace {

Json iso_closure_failure(const Workspace& ws, const MorphismClass& k, const char* side) {
   const FinCategory& c = ws.underlying();
   const auto& flags = ws.flags();
   for(MorId f : k.ids()) {
      for(MorId i = 0; i < ws.size(); ++i) {
         if(!flags[i].iso) continue;
         MorId composite = no_id;
         if(c.dom(i) == c.cod(f) && !k.contains(c.compose(i, f))) composite = c.compose(i, f);
         else if(c.cod(i) == c.dom(f) && !k.contains(c.compose(f, i))) composite = c.compose(f, i);
         if(composite != no_id) {
            return {{"class", side}, {"morphism", c.morphism_name(f)}, {"iso", c.morphism_name(i)}, {"composite", c.morphism_name(composite)}};
         }
      }
   }
   return nullptr;
}

}  // namespace

SystemCheck check_factorization_system(const Workspace& ws, const MorphismClass& E, const MorphismClass& M, Mode mode) {
   const FinCategory& c = ws.underlying();
   for(auto [k, side] : {std::pair{&E, "left"}, std::pair{&M, "right"}}) {
      Json bad = iso_closure_failure(ws, *k, side);
      if(!bad.is_null()) return {Verdict::fail("NotIsoClosed", bad), std::nullopt};
   }
   for(MorId e : E.ids()) {
      for(MorId m : M.ids()) {
         if(ws.orthogonal(e, m, mode)) continue;
         const Verdict v = mode == Mode::ordinary ? is_orthogonal(c, e, m) : is_v_orthogonal(ws.category(), e, m);
         return {Verdict::fail("NotOrthogonal", {{"left", c.morphism_name(e)},
                                                 {"right", c.morphism_name(m)},
                                                 {"reason", v.reason},
                                                 {"square", v.counterexample}}),
                 std::nullopt};
      }
   }
   FactorizationSystem s{E, M, {}, mode};
   for(MorId f = 0; f < ws.size(); ++f) {
      std::optional<Factorization> found;
      for(MorId e : E.ids()) {
         if(c.dom(e) != c.dom(f)) continue;
         for(MorId m : c.hom(c.cod(e), c.cod(f))) {
            if(M.contains(m) && c.compose(m, e) == f) {
               found = Factorization{e, m};
               break;
            }
         }
         if(found) break;
      }
      if(!found) {
         return {Verdict::fail("NoFactorization", {{"morphism", c.morphism_name(f)}}), std::nullopt};
      }
      s.factorizer.push_back(*found);
   }

   if(!is_prefactorization_system(ws, E, M, mode).holds) {
      throw std::logic_error("certified factorization system is not a prefactorization system");
   }
   for(MorId f = 0; f < ws.size(); ++f) {
      if((E.contains(f) && M.contains(f)) != ws.flags()[f].iso) {
         throw std::logic_error("certified factorization system has E and M meeting outside the isos");
      }
   }
   if(mode == Mode::enriched && !check_factorization_system(ws, E, M, Mode::ordinary).verdict.holds) {
      throw std::logic_error("enriched factorization system is not an ordinary one");
   }
   Json witness = to_json(c, s);
   witness["certified"] = Json::array({"iso-closure", "orthogonality", "factorization"});
   return {Verdict::pass("FactorizationSystem", std::move(witness)), std::move(s)};
}

Verdict is_factorization_system(const Workspace& ws, const MorphismClass& E, const MorphismClass& M, Mode mode) {
   return check_factorization_system(ws, E, M, mode).verdict;
}

// ---------------------------------------------------------------------------
// strong classes

namespace {

MorphismClass meet(MorphismClass a, const MorphismClass& b, std::string provenance) {
   for(std::size_t f = 0; f < a.members.size(); ++f) a.members[f] = a.members[f] && b.members[f];
   a.provenance = std::move(provenance);
   return a;
}

bool kernel_pair_is_v_limit(const Workspace& ws, MorId f, Mode mode) {
   const FinCategory& c = ws.underlying();
   const auto kp = kernel_pair(c, f);
   if(!kp) return false;
   if(mode == Mode::ordinary) return true;
   const Cone cone{kp->apex, {c.compose(f, kp->pi1), kp->pi1, kp->pi2}};
   return is_v_limit(ws.category(), Diagram::cospan(c, f, f), cone).holds;
}

bool cokernel_pair_is_v_colimit(const Workspace& ws, MorId f, Mode mode) {
   const FinCategory& op = ws.category().underlying_op();
   const auto kp = kernel_pair(op, f);
   if(!kp) return false;
   if(mode == Mode::ordinary) return true;
   const Cone cocone{kp->apex, {op.compose(f, kp->pi1), kp->pi1, kp->pi2}};
   return is_v_colimit(ws.category(), Diagram::cospan(op, f, f), cocone).holds;
}

}  // namespace

std::optional<MorId> missing_v_kernel_pair(const Workspace& ws) {
   for(MorId f = 0; f < ws.size(); ++f) {
      if(!kernel_pair_is_v_limit(ws, f, Mode::enriched)) return f;
   }
   return std::nullopt;
}

MorphismClass strong_mono_class(const Workspace& ws, Mode mode) {
   const bool enriched = mode == Mode::enriched;
   const MorphismClass right = right_class(ws, enriched ? ws.v_epis() : ws.epis(), mode);
   MorphismClass out = meet(right, enriched ? ws.v_monos() : ws.monos(), enriched ? "strong-monos" : "ordinary-strong-monos");
   bool kernel_pairs = true;
   for(MorId f = 0; f < ws.size() && kernel_pairs; ++f) kernel_pairs = kernel_pair_is_v_limit(ws, f, mode);
   if(kernel_pairs && !(right == out)) {
      throw std::logic_error("strong monos differ from the right class of the epis despite kernel pairs");
   }
   return out;
}

MorphismClass strong_epi_class(const Workspace& ws, Mode mode) {
   const bool enriched = mode == Mode::enriched;
   const MorphismClass left = left_class(ws, enriched ? ws.v_monos() : ws.monos(), mode);
   MorphismClass out = meet(left, enriched ? ws.v_epis() : ws.epis(), enriched ? "strong-epis" : "ordinary-strong-epis");
   bool cokernel_pairs = true;
   for(MorId f = 0; f < ws.size() && cokernel_pairs; ++f) cokernel_pairs = cokernel_pair_is_v_colimit(ws, f, mode);
   if(cokernel_pairs && !(left == out)) {
      throw std::logic_error("strong epis differ from the left class of the monos despite cokernel pairs");
   }
   return out;
}

// ---------------------------------------------------------------------------
// canonical systems

namespace {

CanonicalAttempt attempt(const Workspace& ws, std::string name, MorphismClass left, MorphismClass right) {
   const FinCategory& c = ws.underlying();
   CanonicalAttempt a{std::move(name), std::move(left), std::move(right), {}, std::nullopt};
   a.verdict = intersection_hypotheses(ws, a.right);
   if(!a.verdict.holds) return a;
   std::vector<Factorization> fz;
   fz.reserve(ws.size());
   for(MorId g = 0; g < ws.size(); ++g) {
      try {
         fz.push_back(factor_one(ws, g, a.right));
      } catch(const Error& e) {
         a.verdict = Verdict::fail(std::string(to_string(e.code())), {{"morphism", c.morphism_name(g)}, {"detail", e.detail()}});
         return a;
      }
   }
   SystemCheck chk = check_factorization_system(ws, a.left, a.right, Mode::enriched);
   a.verdict = chk.verdict;
   if(!chk.verdict.holds) return a;
   for(MorId g = 0; g < ws.size(); ++g) {
      if(!a.left.contains(fz[g].e)) {
         a.verdict = Verdict::fail("FactorOutsideLeftClass", {{"morphism", c.morphism_name(g)}, {"e", c.morphism_name(fz[g].e)}});
         return a;
      }
   }
   chk.system->factorizer = std::move(fz);
   Json witness = to_json(c, *chk.system);
   witness["certified"] = a.verdict.witness["certified"];
   a.verdict.witness = std::move(witness);
   a.system = std::move(chk.system);
   return a;
}

Json to_json(const FinCategory& c, const CanonicalAttempt& a) {
   return {{"name", a.name}, {"left", to_json(c, a.left)}, {"right", to_json(c, a.right)}, {"verdict", to_json(a.verdict)}};
}

}  // namespace

CanonicalReport canonical_systems(const Workspace& ws) {
   CanonicalReport r;
   r.epi_strong_mono = attempt(ws, "epi-strong-mono", ws.v_epis(), strong_mono_class(ws));
   r.strong_epi_mono = attempt(ws, "strong-epi-mono", strong_epi_class(ws), ws.v_monos());
   r.coincide = r.epi_strong_mono.system && r.strong_epi_mono.system && r.epi_strong_mono.left == r.strong_epi_mono.left &&
                r.epi_strong_mono.right == r.strong_epi_mono.right;
   return r;
}

Json to_json(const FinCategory& c, const CanonicalReport& r) {
   return {{"epi_strong_mono", to_json(c, r.epi_strong_mono)},
           {"strong_epi_mono", to_json(c, r.strong_epi_mono)},
           {"coincide", r.coincide}};
}

// ---------------------------------------------------------------------------
// finite well-completeness

namespace {

Json missing_limit(const Workspace& ws, const char* shape, const Diagram& d) {
   const FinCategory& c = ws.underlying();
   const auto cone = limit_cone(c, d);
   if(cone && is_v_limit(ws.category(), d, *cone).holds) return nullptr;
   return {{"shape", shape}, {"diagram", to_json(c, d)}, {"issue", cone ? "NotVLimit" : "NoLimit"}};
}

Json first_missing_limit(const Workspace& ws) {
   const FinCategory& c = ws.underlying();
   Json bad = missing_limit(ws, "terminal", Diagram::discrete({}));
   if(!bad.is_null()) return bad;
   for(ObjId a = 0; a < c.num_objects(); ++a) {
      for(ObjId b = a; b < c.num_objects(); ++b) {
         const std::array<ObjId, 2> pair{a, b};
         bad = missing_limit(ws, "product", Diagram::discrete(pair));
         if(!bad.is_null()) return bad;
      }
   }
   for(MorId p = 0; p < ws.size(); ++p) {
      for(MorId q = p + 1; q < ws.size(); ++q) {
         if(c.dom(p) != c.dom(q) || c.cod(p) != c.cod(q)) continue;
         bad = missing_limit(ws, "equalizer", Diagram::parallel_pair(c, p, q));
         if(!bad.is_null()) return bad;
      }
   }
   for(MorId f = 0; f < ws.size(); ++f) {
      for(MorId g = f; g < ws.size(); ++g) {
         if(c.cod(f) != c.cod(g)) continue;
         bad = missing_limit(ws, "pullback", Diagram::cospan(c, f, g));
         if(!bad.is_null()) return bad;
      }
   }
   return nullptr;
}

}  // namespace

FWCReport check_fwc(const Workspace& ws) {
   FWCReport r;
   r.missing_limit = first_missing_limit(ws);
   r.has_finite_v_limits = r.missing_limit.is_null();
   const MorphismClass strong = strong_mono_class(ws);
   r.missing_intersection = for_each_family(ws.underlying(), strong, [&](ObjId b, const std::vector<MorId>& family) {
      return intersection_issue(ws, b, family, nullptr);
   });
   r.has_strong_mono_v_intersections = r.missing_intersection.is_null();
   return r;
}

Json to_json(const FWCReport& r) {
   return {{"has_finite_v_limits", r.has_finite_v_limits},
           {"missing_limit", r.missing_limit},
           {"has_strong_mono_v_intersections", r.has_strong_mono_v_intersections},
           {"missing_intersection", r.missing_intersection},
           {"note", "well-poweredness holds trivially for finite categories; these are the remaining finite conditions"}};
}

}  // namespace enrifact
