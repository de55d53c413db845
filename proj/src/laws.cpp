// SPDX-License-Identifier: Apache-2.0

#include <enrifact/error.hpp>
#include <enrifact/laws.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace enrifact {

namespace {

struct LawInfo {
   const char* id;
   const char* statement;
};

constexpr LawInfo laws[] = {
   {"CAT-PULLBACK-PASTING", "with a pullback on the right, the left square is a pullback iff the pasted square is"},
   {"MON-CURRY-INVERSE", "curry and uncurry are mutually inverse on every hom of V"},
   {"ENR-VMONO-MONO", "V-monos are monos and V-epis are epis"},
   {"ENR-KERNEL-PAIR", "f is V-mono iff (1, 1) presents its domain as a V-kernel pair of f"},
   {"ENR-SECTION-REGULAR", "sections are V-regular-monos and retractions are V-regular-epis"},
   {"ENR-VMONO-CLOSURE", "V-monos are closed under composition, present V-pullbacks and covered cotensors"},
   {"ORTH-SELF-ISO", "a morphism orthogonal to itself is an iso"},
   {"ORTH-ISO", "isos are orthogonal to every morphism on either side"},
   {"ORTH-V-IMPLIES-ORD", "enriched orthogonality implies ordinary orthogonality"},
   {"ORTH-SET-COLLAPSE", "over finite sets the enriched and ordinary relations agree"},
   {"ORTH-GALOIS", "H is inside H^{down up} and H^{up down}; H^{down up down} = H^{down}; H^{up down up} = H^{up}"},
   {"PREF-FIXED-POINT", "closure outputs satisfy E = M^{up} and M = E^{down}"},
   {"PREF-ISOS", "E and M meet exactly in the isos"},
   {"PREF-COMPOSE", "E and M are closed under composition"},
   {"PREF-CANCEL-RIGHT", "m.n in M with m in M gives n in M"},
   {"PREF-CANCEL-LEFT", "e.d in E with d in E gives e in E"},
   {"PREF-PULLBACK", "pullbacks of M-morphisms lie in M wherever they are present (V-pullbacks in enriched mode)"},
   {"PREF-FIBRE-PRODUCT", "present fibre products of M-morphisms lie in M"},
   {"PREF-PUSHOUT", "pushouts of E-morphisms lie in E wherever they are present (V-pushouts in enriched mode)"},
   {"PREF-COTENSOR", "M is closed under covered cotensors"},
   {"PREF-TENSOR", "E is closed under covered tensors"},
   {"FACT-CLASS-CHAIN", "v-regular-monos, strong monos, v-monos, monos form an increasing chain"},
   {"FACT-STRMONO-KERNEL", "with all V-kernel pairs the strong monos are the right class of the V-epis"},
   {"FACT-TENSORED-COLLAPSE", "over finite sets the V-monos, V-epis and V-strong-monos are the ordinary ones"},
   {"FACT-EQUIVALENCE", "enriched certification equals ordinary certification plus pairwise enriched orthogonality"},
   {"FACT-FACTORIZER", "certified factorizers split every morphism within the classes, and any two splittings differ by an iso"},
};

class Recorder {
public:
   explicit Recorder(LawResult& r) : r_(r) {}

   template <typename F>
   void check(bool ok, F&& cex) {
      ++r_.instances;
      if(!ok && r_.failures++ == 0) r_.counterexample = cex();
   }

private:
   LawResult& r_;
};

/// Limit cones of cospans, computed on demand.
class Cospans {
public:
   struct Entry {
      std::optional<Cone> cone;
      bool v_limit = false;
   };

   Cospans(const EnrichedCategory& b, bool colimits) : b_(b), colimits_(colimits) {}

   const FinCategory& category() const { return colimits_ ? b_.underlying_op() : b_.underlying(); }

   const Entry& get(MorId f, MorId g) {
      auto it = cache_.find({f, g});
      if(it != cache_.end()) return it->second;
      const FinCategory& c = category();
      const Diagram d = Diagram::cospan(c, f, g);
      Entry e;
      e.cone = limit_cone(c, d);
      if(e.cone) e.v_limit = (colimits_ ? is_v_colimit(b_, d, *e.cone) : is_v_limit(b_, d, *e.cone)).holds;
      return cache_.emplace(std::pair{f, g}, std::move(e)).first->second;
   }

   /// Present in the mode: any limit for ordinary, a V-limit for enriched.
   const Cone* present(MorId f, MorId g, Mode mode) {
      const Entry& e = get(f, g);
      if(!e.cone || (mode == Mode::enriched && !e.v_limit)) return nullptr;
      return &*e.cone;
   }

private:
   const EnrichedCategory& b_;
   bool colimits_;
   std::map<std::pair<MorId, MorId>, Entry> cache_;
};

struct Covered {
   std::vector<std::pair<MorId, MorId>> cotensors;   // (m, [v, m])
   std::vector<std::pair<MorId, MorId>> tensors;     // (e, v (x) e)
};

Covered covered_maps(const EnrichedCategory& b) {
   Covered out;
   const FinCategory& c = b.underlying();
   for(const auto& v : b.coverage_universe()) {
      for(MorId f = 0; f < c.num_morphisms(); ++f) {
         if(auto k = cotensor_morphism(b, v, f)) out.cotensors.emplace_back(f, *k);
         if(auto k = tensor_morphism(b, v, f)) out.tensors.emplace_back(f, *k);
      }
   }
   return out;
}

struct Pair {
   MorphismClass left;
   MorphismClass right;
   Mode mode;
   std::string origin;
};

class Suite {
public:
   Suite(const Workspace& ws, const LawOptions& opt)
      : ws_(ws), c_(ws.underlying()), opt_(opt), rng_(opt.seed), pullbacks_(ws.category(), false),
        pushouts_(ws.category(), true) {
      for(const auto& l : laws) results_[l.id] = LawResult{l.id, l.statement, 0, 0, nullptr, nullptr};
      for(const auto& id : opt.only) {
         if(!results_.contains(id)) throw Error(ErrorCode::UsageError, "unknown law ID '" + id + "'");
      }
   }

   std::vector<LawResult> run() {
      if(want("CAT-PULLBACK-PASTING")) pasting();
      if(want("MON-CURRY-INVERSE")) curry();
      if(want_prefix("ENR-")) enriched();
      if(want_prefix("ORTH-")) orthogonality();
      if(want_prefix("PREF-") || want("FACT-EQUIVALENCE") || want("FACT-FACTORIZER")) systems();
      if(want("FACT-CLASS-CHAIN") || want("FACT-STRMONO-KERNEL") || want("FACT-TENSORED-COLLAPSE")) classes();
      std::vector<LawResult> out;
      for(const auto& l : laws) {
         if(want(l.id)) out.push_back(results_[l.id]);
      }
      return out;
   }

private:
   const Workspace& ws_;
   const FinCategory& c_;
   const LawOptions& opt_;
   std::mt19937_64 rng_;
   Cospans pullbacks_;
   Cospans pushouts_;
   std::map<std::string, LawResult> results_;

   bool want(const std::string& id) const {
      return opt_.only.empty() || std::find(opt_.only.begin(), opt_.only.end(), id) != opt_.only.end();
   }
   bool want_prefix(const std::string& prefix) const {
      return std::any_of(std::begin(laws), std::end(laws), [&](const LawInfo& l) { return std::string(l.id).starts_with(prefix) && want(l.id); });
   }
   Recorder law(const std::string& id) { return Recorder(results_.at(id)); }
   std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
   std::string name(MorId f) const { return c_.morphism_name(f); }

   // -----------------------------------------------------------------------

   void pasting() {
      Recorder r = law("CAT-PULLBACK-PASTING");
      std::size_t positives = 0;
      std::size_t samples = 0;
      for(std::size_t attempt = 0; samples < opt_.pasted_squares && attempt < 50 * opt_.pasted_squares; ++attempt) {
         const MorId h = below(ws_.size());
         std::vector<MorId> ks;
         for(MorId k = 0; k < ws_.size(); ++k)
            if(c_.cod(k) == c_.cod(h)) ks.push_back(k);
         const MorId k = ks[below(ks.size())];
         const auto& right = pullbacks_.get(h, k);
         if(!right.cone) continue;
         const MorId py = right.cone->legs[1];
         const MorId pw = right.cone->legs[2];
         std::vector<MorId> ys;
         for(MorId y = 0; y < ws_.size(); ++y)
            if(c_.cod(y) == c_.dom(h)) ys.push_back(y);
         const MorId y = ys[below(ys.size())];
         MorId q1 = no_id;
         MorId q2 = no_id;
         const auto& left = pullbacks_.get(y, py);
         if(left.cone && below(2) == 0) {
            q1 = left.cone->legs[1];
            q2 = left.cone->legs[2];
         } else {
            const ObjId q = below(c_.num_objects());
            std::vector<std::pair<MorId, MorId>> squares;
            for(MorId a : c_.hom(q, c_.dom(y)))
               for(MorId b : c_.hom(q, right.cone->apex))
                  if(c_.compose(y, a) == c_.compose(py, b)) squares.emplace_back(a, b);
            if(squares.empty()) continue;
            std::tie(q1, q2) = squares[below(squares.size())];
         }
         ++samples;
         const bool inner = is_pullback_square(c_, Square{q1, q2, y, py}).holds;
         const bool outer = is_pullback_square(c_, Square{q1, c_.compose(pw, q2), c_.compose(h, y), k}).holds;
         positives += inner ? 1 : 0;
         r.check(inner == outer, [&] {
            return Json{{"right", {{"h", name(h)}, {"k", name(k)}}}, {"along", name(y)}, {"left", {name(q1), name(q2)}},
                        {"left_pullback", inner}, {"outer_pullback", outer}};
         });
      }
      results_.at("CAT-PULLBACK-PASTING").info = {{"pullback_samples", positives}, {"samples", samples}};
   }

   void curry() {
      if(ws_.category().backend() != Backend::table) return;
      Recorder r = law("MON-CURRY-INVERSE");
      const auto& V = ws_.category().values();
      const FinCategory& vc = V.base();
      for(ObjId x = 0; x < vc.num_objects(); ++x)
         for(ObjId y = 0; y < vc.num_objects(); ++y)
            for(ObjId z = 0; z < vc.num_objects(); ++z) {
               for(MorId h : vc.hom(V.tensor(x, y), z)) {
                  r.check(V.uncurry(x, y, z, V.curry(x, y, h)) == h, [&] { return Json{{"morphism", vc.morphism_name(h)}}; });
               }
               for(MorId k : vc.hom(x, V.hom(y, z))) {
                  r.check(V.curry(x, y, V.uncurry(x, y, z, k)) == k, [&] { return Json{{"morphism", vc.morphism_name(k)}}; });
               }
            }
   }

   void enriched() {
      const auto& flags = ws_.flags();
      const auto& v = ws_.v_flags();
      const EnrichedCategory& b = ws_.category();
      Recorder mono = law("ENR-VMONO-MONO");
      Recorder kernel = law("ENR-KERNEL-PAIR");
      Recorder section = law("ENR-SECTION-REGULAR");
      Recorder closure = law("ENR-VMONO-CLOSURE");
      for(MorId f = 0; f < ws_.size(); ++f) {
         const auto cex = [&] { return Json{{"morphism", name(f)}}; };
         mono.check(!v[f].v_mono || flags[f].mono, cex);
         mono.check(!v[f].v_epi || flags[f].epi, cex);
         const ObjId a = c_.dom(f);
         const Cone cone{a, {f, c_.identity(a), c_.identity(a)}};
         kernel.check(is_v_limit(b, Diagram::cospan(c_, f, f), cone).holds == v[f].v_mono, cex);
         section.check(!flags[f].section || v[f].v_regular_mono, cex);
         section.check(!flags[f].retraction || v[f].v_regular_epi, cex);
      }
      for(MorId f = 0; f < ws_.size(); ++f) {
         if(!v[f].v_mono) continue;
         for(MorId g = 0; g < ws_.size(); ++g) {
            if(c_.dom(g) == c_.cod(f) && v[g].v_mono) {
               closure.check(v[c_.compose(g, f)].v_mono, [&] { return Json{{"composite", {name(g), name(f)}}}; });
            }
            if(c_.cod(g) == c_.cod(f)) {
               if(const Cone* p = pullbacks_.present(f, g, Mode::enriched)) {
                  closure.check(v[p->legs[2]].v_mono, [&] { return Json{{"pullback", {name(f), name(g)}}}; });
               }
            }
         }
      }
      for(const auto& [m, k] : covered_maps(b).cotensors) {
         if(v[m].v_mono) closure.check(v[k].v_mono, [&] { return Json{{"cotensor", name(k)}, {"of", name(m)}}; });
      }
   }

   MorphismClass random_class() {
      MorphismClass h = MorphismClass::none(ws_.size(), "seeded");
      for(MorId f = 0; f < ws_.size(); ++f) h.members[f] = below(3) == 0;
      return h;
   }

   void orthogonality() {
      const auto& flags = ws_.flags();
      const bool finset = ws_.category().backend() == Backend::finset;
      Recorder self = law("ORTH-SELF-ISO");
      Recorder iso = law("ORTH-ISO");
      Recorder implies = law("ORTH-V-IMPLIES-ORD");
      Recorder collapse = law("ORTH-SET-COLLAPSE");
      std::size_t strict = 0;
      Json example = nullptr;
      for(MorId e = 0; e < ws_.size(); ++e) {
         for(Mode mode : {Mode::ordinary, Mode::enriched}) {
            self.check(!ws_.orthogonal(e, e, mode) || flags[e].iso, [&] { return Json{{"morphism", name(e)}, {"mode", to_string(mode)}}; });
         }
         for(MorId m = 0; m < ws_.size(); ++m) {
            const bool ord = ws_.orthogonal(e, m, Mode::ordinary);
            const bool enr = ws_.orthogonal(e, m, Mode::enriched);
            const auto cex = [&] { return Json{{"left", name(e)}, {"right", name(m)}, {"ordinary", ord}, {"enriched", enr}}; };
            if(flags[e].iso || flags[m].iso) iso.check(ord && enr, cex);
            implies.check(!enr || ord, cex);
            if(ord && !enr && strict++ == 0) example = cex();
            if(finset) collapse.check(ord == enr, cex);
         }
      }
      results_.at("ORTH-V-IMPLIES-ORD").info = {{"strictly_stronger_pairs", strict}, {"example", example}};

      Recorder galois = law("ORTH-GALOIS");
      for(std::size_t i = 0; i < opt_.random_classes; ++i) {
         const MorphismClass h = random_class();
         for(Mode mode : {Mode::ordinary, Mode::enriched}) {
            const auto down = right_class(ws_, h, mode);
            const auto up = left_class(ws_, h, mode);
            const auto cex = [&] { return Json{{"class", to_json(c_, h)}, {"mode", to_string(mode)}}; };
            galois.check(h.subset_of(left_class(ws_, down, mode)), cex);
            galois.check(h.subset_of(right_class(ws_, up, mode)), cex);
            galois.check(right_class(ws_, left_class(ws_, down, mode), mode) == down, cex);
            galois.check(left_class(ws_, right_class(ws_, up, mode), mode) == up, cex);
         }
      }
   }

   std::vector<Pair> system_pairs() {
      std::vector<Pair> pairs;
      std::set<std::tuple<std::vector<bool>, std::vector<bool>, Mode>> seen;
      const auto add = [&](const MorphismClass& e, const MorphismClass& m, Mode mode, std::string origin) {
         if(seen.insert({e.members, m.members, mode}).second) pairs.push_back({e, m, mode, std::move(origin)});
      };
      for(std::size_t i = 0; i < opt_.random_classes; ++i) {
         const MorphismClass h = random_class();
         for(Mode mode : {Mode::ordinary, Mode::enriched}) {
            for(Side side : {Side::left, Side::right}) {
               const auto p = prefactorization_closure(ws_, h, side, mode);
               add(p.left, p.right, mode, "closure");
            }
         }
      }
      const auto canonical = canonical_systems(ws_);
      for(const auto* a : {&canonical.epi_strong_mono, &canonical.strong_epi_mono}) {
         if(a->system) add(a->left, a->right, Mode::enriched, a->name);
      }
      return pairs;
   }

   void systems() {
      const auto& flags = ws_.flags();
      const Covered covered = covered_maps(ws_.category());
      Recorder fixed = law("PREF-FIXED-POINT");
      Recorder isos = law("PREF-ISOS");
      Recorder compose = law("PREF-COMPOSE");
      Recorder cancel_right = law("PREF-CANCEL-RIGHT");
      Recorder cancel_left = law("PREF-CANCEL-LEFT");
      Recorder pullback = law("PREF-PULLBACK");
      Recorder fibre = law("PREF-FIBRE-PRODUCT");
      Recorder pushout = law("PREF-PUSHOUT");
      Recorder cotensor = law("PREF-COTENSOR");
      Recorder tensor = law("PREF-TENSOR");
      Recorder equivalence = law("FACT-EQUIVALENCE");
      Recorder factorizer = law("FACT-FACTORIZER");
      const FinCategory& op = ws_.category().underlying_op();
      std::size_t certified = 0;

      for(const Pair& p : system_pairs()) {
         const MorphismClass& E = p.left;
         const MorphismClass& M = p.right;
         const auto where = [&](Json detail) {
            return Json{{"origin", p.origin}, {"mode", to_string(p.mode)}, {"left", to_json(c_, E)}, {"right", to_json(c_, M)}, {"detail", std::move(detail)}};
         };
         fixed.check(is_prefactorization_system(ws_, E, M, p.mode).holds, [&] { return where(nullptr); });
         for(MorId f = 0; f < ws_.size(); ++f) {
            isos.check((E.contains(f) && M.contains(f)) == flags[f].iso, [&] { return where(name(f)); });
         }
         for(MorId f = 0; f < ws_.size(); ++f) {
            for(MorId g = 0; g < ws_.size(); ++g) {
               if(c_.dom(g) == c_.cod(f)) {
                  const MorId gf = c_.compose(g, f);
                  const auto cex = [&] { return where({name(g), name(f)}); };
                  if(E.contains(f) && E.contains(g)) compose.check(E.contains(gf), cex);
                  if(M.contains(f) && M.contains(g)) compose.check(M.contains(gf), cex);
                  if(M.contains(gf) && M.contains(g)) cancel_right.check(M.contains(f), cex);
                  if(E.contains(gf) && E.contains(f)) cancel_left.check(E.contains(g), cex);
               }
               if(c_.cod(g) == c_.cod(f) && M.contains(f)) {
                  if(const Cone* cone = pullbacks_.present(f, g, p.mode)) {
                     pullback.check(M.contains(cone->legs[2]), [&] { return where({{"m", name(f)}, {"along", name(g)}}); });
                     if(M.contains(g)) fibre.check(M.contains(cone->legs[0]), [&] { return where({name(f), name(g)}); });
                  }
               }
               if(op.cod(g) == op.cod(f) && E.contains(f)) {
                  if(const Cone* cone = pushouts_.present(f, g, p.mode)) {
                     pushout.check(E.contains(cone->legs[2]), [&] { return where({{"e", name(f)}, {"along", name(g)}}); });
                  }
               }
            }
         }
         for(const auto& [m, k] : covered.cotensors) {
            if(M.contains(m)) cotensor.check(M.contains(k), [&] { return where({{"cotensor", name(k)}, {"of", name(m)}}); });
         }
         for(const auto& [e, k] : covered.tensors) {
            if(E.contains(e)) tensor.check(E.contains(k), [&] { return where({{"tensor", name(k)}, {"of", name(e)}}); });
         }

         const SystemCheck ord = check_factorization_system(ws_, E, M, Mode::ordinary);
         const SystemCheck enr = check_factorization_system(ws_, E, M, Mode::enriched);
         bool pairwise = true;
         for(MorId e : E.ids())
            for(MorId m : M.ids()) pairwise = pairwise && is_v_orthogonal(ws_.category(), e, m).holds;
         equivalence.check(enr.verdict.holds == (ord.verdict.holds && pairwise), [&] {
            return where({{"enriched", enr.verdict.holds}, {"ordinary", ord.verdict.holds}, {"pairwise", pairwise}});
         });
         const SystemCheck& chk = p.mode == Mode::ordinary ? ord : enr;
         if(chk.system) {
            ++certified;
            check_factorizer(factorizer, *chk.system, where);
         }
      }
      results_.at("FACT-FACTORIZER").info = {{"certified_systems", certified}};
   }

   template <typename W>
   void check_factorizer(Recorder& r, const FactorizationSystem& s, const W& where) {
      const auto& flags = ws_.flags();
      for(MorId f = 0; f < ws_.size(); ++f) {
         const auto [e, m] = s.factorizer[f];
         r.check(c_.compose(m, e) == f && s.left.contains(e) && s.right.contains(m), [&] { return where(name(f)); });
         std::vector<Factorization> all;
         for(MorId x : s.left.ids()) {
            if(c_.dom(x) != c_.dom(f)) continue;
            for(MorId y : c_.hom(c_.cod(x), c_.cod(f)))
               if(s.right.contains(y) && c_.compose(y, x) == f) all.push_back({x, y});
         }
         for(const auto& a : all) {
            // the filler of the square (a.e, a.m) against (e, m) compares the two middles
            const auto w = [&] {
               for(MorId x : c_.hom(c_.cod(a.e), c_.dom(m)))
                  if(c_.compose(x, a.e) == e && c_.compose(m, x) == a.m) return x;
               return no_id;
            }();
            r.check(w != no_id && flags[w].iso, [&] { return where({{"morphism", name(f)}, {"splitting", {name(a.e), name(a.m)}}}); });
         }
      }
   }

   void classes() {
      const auto strong = strong_mono_class(ws_);
      if(want("FACT-CLASS-CHAIN")) {
         Recorder r = law("FACT-CLASS-CHAIN");
         const auto reg = ws_.v_regular_monos();
         const auto vm = ws_.v_monos();
         const auto m = ws_.monos();
         for(MorId f = 0; f < ws_.size(); ++f) {
            const auto cex = [&] { return Json{{"morphism", name(f)}}; };
            r.check(!reg.contains(f) || strong.contains(f), cex);
            r.check(!strong.contains(f) || vm.contains(f), cex);
            r.check(!vm.contains(f) || m.contains(f), cex);
         }
      }
      if(want("FACT-STRMONO-KERNEL")) {
         const auto missing = missing_v_kernel_pair(ws_);
         if(!missing) {
            Recorder r = law("FACT-STRMONO-KERNEL");
            const auto right = right_class(ws_, ws_.v_epis(), Mode::enriched);
            for(MorId f = 0; f < ws_.size(); ++f) r.check(right.contains(f) == strong.contains(f), [&] { return Json{{"morphism", name(f)}}; });
         }
         results_.at("FACT-STRMONO-KERNEL").info = {{"missing_v_kernel_pair", missing ? Json(name(*missing)) : Json(nullptr)}};
      }
      if(want("FACT-TENSORED-COLLAPSE") && ws_.category().backend() == Backend::finset) {
         Recorder r = law("FACT-TENSORED-COLLAPSE");
         const auto ordinary = strong_mono_class(ws_, Mode::ordinary);
         const auto vm = ws_.v_monos();
         const auto ve = ws_.v_epis();
         const auto m = ws_.monos();
         const auto e = ws_.epis();
         for(MorId f = 0; f < ws_.size(); ++f) {
            const auto cex = [&] { return Json{{"morphism", name(f)}}; };
            r.check(vm.contains(f) == m.contains(f), cex);
            r.check(ve.contains(f) == e.contains(f), cex);
            r.check(strong.contains(f) == ordinary.contains(f), cex);
         }
      }
   }
};

}  // namespace

Json to_json(const LawResult& r) {
   return {{"id", r.id},
           {"statement", r.statement},
           {"holds", r.holds()},
           {"instances", r.instances},
           {"failures", r.failures},
           {"counterexample", r.counterexample},
           {"info", r.info}};
}

const std::vector<std::string>& law_ids() {
   static const std::vector<std::string> ids = [] {
      std::vector<std::string> out;
      for(const auto& l : laws) out.emplace_back(l.id);
      return out;
   }();
   return ids;
}

std::vector<LawResult> run_laws(const Workspace& ws, const LawOptions& options) {
   return Suite(ws, options).run();
}

}  // namespace enrifact
