// SPDX-License-Identifier: Apache-2.0
// In-process runs of the command line; reports are re-checked through the library.

#include <doctest.h>

#include <enrifact/document.hpp>
#include <enrifact/factor.hpp>
#include <enrifact/laws.hpp>
#include <enrifact/report.hpp>

#include "../../tools/run_command.hpp"
#include "../support/fixtures.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace enrifact;
using namespace fixtures;

namespace {

const std::string corpus = std::string(ENRIFACT_SOURCE_DIR) + "/corpus/";

struct Run {
   int code;
   std::string out;
   std::string err;
   Json report() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
   args.insert(args.begin(), "enrifact");
   Run r{0, {}, {}};
   r.code = cli::run_command(args, r.out, r.err);
   return r;
}

std::string slurp(const std::string& path) {
   std::ifstream in(path, std::ios::binary);
   std::stringstream s;
   s << in.rdbuf();
   return s.str();
}

Workspace workspace(const std::string& file) {
   return Workspace(load(parse_document(slurp(corpus + file))).category);
}

std::vector<std::string> names(const FinCategory& c, bool (*pred)(const Fn&)) {
   std::vector<std::string> out;
   for(MorId f = 0; f < c.num_morphisms(); ++f)
      if(pred(parse_fn(c.morphism_name(f)))) out.push_back(c.morphism_name(f));
   return out;
}

struct TempFile {
   std::filesystem::path path;
   explicit TempFile(const std::string& name, const std::string& text = {}) : path(std::filesystem::temp_directory_path() / name) {
      if(!text.empty()) std::ofstream(path, std::ios::binary) << text;
   }
   ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("canonical on finite sets: both systems are (surjections, injections)") {
   const Run r = run({"canonical", corpus + "finset3.json"});
   REQUIRE(r.code == 0);
   const Json rep = r.report();
   CHECK(rep["status"] == "holds");
   const Json& res = rep["result"];
   CHECK(res["coincide"] == true);
   const FinCategory c = finset_upto(3);
   const Json inj = names(c, injective);
   const Json surj = names(c, surjective);
   for(const char* key : {"epi_strong_mono", "strong_epi_mono"}) {
      INFO(key);
      CHECK(res[key]["left"] == surj);
      CHECK(res[key]["right"] == inj);
      CHECK(res[key]["verdict"]["holds"] == true);
   }
}

TEST_CASE("orth on a surjection against itself fails with a re-checkable square") {
   const Run r = run({"orth", corpus + "finset3.json", "2>1:00", "2>1:00"});
   CHECK(r.code == 1);
   const Json v = r.report()["result"]["verdict"];
   CHECK(v["holds"] == false);
   const FinCategory c = finset_upto(3);
   const MorId e = c.morphism("2>1:00");
   const MorId u = c.morphism(v["counterexample"]["square"]["top"].get<std::string>());
   const MorId b = c.morphism(v["counterexample"]["square"]["bottom"].get<std::string>());
   CHECK(c.compose(b, e) == c.compose(e, u));
   const Json& candidates = v["counterexample"]["candidates"];
   CHECK(candidates.size() == 2);
   std::size_t fillers = 0;
   for(const auto& k : candidates) {
      const MorId w = c.morphism(k["diagonal"].get<std::string>());
      CHECK(c.morphism_name(c.compose(w, e)) == k["upper"]);
      CHECK(c.morphism_name(c.compose(e, w)) == k["lower"]);
      fillers += c.compose(w, e) == u && c.compose(e, w) == b ? 1 : 0;
   }
   CHECK(fillers == v["counterexample"]["fillers"].size());
   CHECK(fillers == 0);
}

TEST_CASE("orth witnesses re-validate") {
   const Run r = run({"orth", corpus + "finset3.json", "2>1:00", "1>2:0", "--enriched"});
   const Run o = run({"orth", corpus + "finset3.json", "2>1:00", "1>2:0"});
   CHECK(r.code == o.code);
   const Run holds = run({"orth", corpus + "chain3_v2.json", "0->1", "1->2", "--enriched"});
   CHECK(holds.code == 0);
   const Run ord = run({"orth", corpus + "chain3_v2.json", "0->1", "1->2"});
   REQUIRE(ord.code == 0);
   const auto ws = workspace("chain3_v2.json");
   const auto& c = ws.underlying();
   for(const auto& row : ord.report()["result"]["verdict"]["witness"]["fillers"]) {
      const MorId w = c.morphism(row[2].get<std::string>());
      CHECK(c.compose(w, c.morphism("0->1")) == c.morphism(row[0].get<std::string>()));
      CHECK(c.compose(c.morphism("1->2"), w) == c.morphism(row[1].get<std::string>()));
   }
}

TEST_CASE("laws on the 3-chain over V2 list every law with counts") {
   const Run r = run({"laws", corpus + "chain3_v2.json"});
   CHECK(r.code == 0);
   const Json res = r.report()["result"];
   REQUIRE(res["laws"].size() == law_ids().size());
   for(std::size_t i = 0; i < law_ids().size(); ++i) {
      CHECK(res["laws"][i]["id"] == law_ids()[i]);
      CHECK(res["laws"][i]["failures"] == 0);
   }
   CHECK(res["instances"].get<std::size_t>() > 0);
   const Run one = run({"laws", corpus + "w2.json", "--law", "ORTH-SELF-ISO", "--law", "PREF-CANCEL-RIGHT"});
   CHECK(one.code == 0);
   CHECK(one.report()["result"]["laws"].size() == 2);
   CHECK(run({"laws", corpus + "w2.json", "--law", "NO-SUCH-LAW"}).code == 3);
}

TEST_CASE("closure and check-system agree with the library") {
   const Run r = run({"closure", corpus + "finset3.json", "--seed", "2>1:00", "--side", "right"});
   REQUIRE(r.code == 0);
   const Json res = r.report()["result"];
   const auto ws = workspace("finset3.json");
   const auto& c = ws.underlying();
   const auto ids = [](const Json& j) { return j.get<std::vector<std::string>>(); };
   const auto left = MorphismClass::from_ids(c, ids(res["left"]), "left");
   const auto right = MorphismClass::from_ids(c, ids(res["right"]), "right");
   CHECK(is_prefactorization_system(ws, left, right, Mode::ordinary).holds);

   std::string surj;
   std::string inj;
   for(const auto& s : names(c, surjective)) surj += (surj.empty() ? "" : ",") + s;
   for(const auto& s : names(c, injective)) inj += (inj.empty() ? "" : ",") + s;
   CHECK(run({"check-system", corpus + "finset3.json", "--left", surj, "--right", inj, "--enriched"}).code == 0);
   const Run swapped = run({"check-system", corpus + "finset3.json", "--left", inj, "--right", surj});
   CHECK(swapped.code == 1);
   CHECK(swapped.report()["result"]["verdict"]["holds"] == false);
}

TEST_CASE("factorize through predicate and explicit classes") {
   const Run r = run({"factorize", corpus + "finset3.json", "2>3:10", "--right-class", "injections"});
   REQUIRE(r.code == 0);
   const Json fz = r.report()["result"]["factorization"];
   CHECK(fz["e"] == "2>2:10");
   CHECK(fz["m"] == "2>3:01");
   CHECK(fz["composite"] == "2>3:10");
   CHECK(run({"factorize", corpus + "finset3.json", "2>3:10", "--right-class", "monos"}).out ==
         run({"factorize", corpus + "finset3.json", "2>3:10", "--right-class", "monos"}).out);
   // hypothesis (ii) fails once the two-element sets are missing
   const Run gap = run({"factorize", corpus + "finset013.json", "3>1:000", "--right-class", "monos"});
   CHECK(gap.code == 1);
   CHECK(gap.report()["result"]["hypotheses"]["holds"] == false);
   // M = isos: everything is its own left factor
   const Run ids = run({"factorize", corpus + "w2.json", "0->1", "--right-class", "0->0,1->1"});
   CHECK(ids.code == 0);
   CHECK(ids.report()["result"]["factorization"]["e"] == "0->1");
   CHECK(ids.report()["result"]["factorization"]["m"] == "1->1");
   CHECK(run({"factorize", corpus + "w2.json", "0->1", "--right-class", "injections"}).code == 3);
   CHECK(run({"factorize", corpus + "w2.json", "0->1", "--right-class", "epis-ish"}).code == 3);
}

TEST_CASE("classify evidence re-checks") {
   const Run r = run({"classify", corpus + "finset3.json", "--enriched"});
   REQUIRE(r.code == 0);
   const FinCategory c = finset_upto(3);
   for(const auto& m : r.report()["result"]["morphisms"]) {
      const MorId f = c.morphism(m["id"].get<std::string>());
      const Fn fn = parse_fn(m["id"].get<std::string>());
      const auto has = [&](const char* list, const char* flag) {
         const Json& names = m[list];
         return std::find(names.begin(), names.end(), Json(flag)) != names.end();
      };
      CHECK(has("flags", "mono") == injective(fn));
      CHECK(has("flags", "epi") == surjective(fn));
      CHECK(has("v_flags", "v-mono") == injective(fn));
      const Json& ev = m["evidence"];
      if(ev.contains("mono")) {
         const MorId x = c.morphism(ev["mono"]["x"].get<std::string>());
         const MorId y = c.morphism(ev["mono"]["y"].get<std::string>());
         CHECK(x != y);
         CHECK(c.compose(f, x) == c.compose(f, y));
      }
      CHECK(ev.contains("mono") == !injective(fn));
      if(ev.contains("epi")) {
         CHECK(c.compose(c.morphism(ev["epi"]["x"].get<std::string>()), f) == c.compose(c.morphism(ev["epi"]["y"].get<std::string>()), f));
      }
      if(ev.contains("iso")) CHECK(c.compose(c.morphism(ev["iso"]["inverse"].get<std::string>()), f) == c.identity(c.dom(f)));
      CHECK(ev.contains("iso") == has("flags", "iso"));
      CHECK(ev.contains("section") == has("flags", "section"));
      CHECK(ev.contains("retraction") == has("flags", "retraction"));
   }
}

TEST_CASE("fwc report") {
   const Run r = run({"fwc", corpus + "finset3.json"});
   CHECK(r.code == 1);
   CHECK(r.report()["result"]["has_finite_v_limits"] == false);
   CHECK(run({"fwc", corpus + "chain3_v2.json"}).code == 0);
}

TEST_CASE("exit codes") {
   CHECK(run({"validate", corpus + "finset3.json"}).code == 0);
   CHECK(run({"validate", corpus + "missing.json"}).code == 3);
   CHECK(run({}).code == 3);
   CHECK(run({"frobnicate", corpus + "w2.json"}).code == 3);
   CHECK(run({"orth", corpus + "w2.json", "0->1"}).code == 3);
   CHECK(run({"orth", corpus + "w2.json", "0->1", "0->1", "--format", "xml"}).code == 3);
   CHECK(run({"closure", corpus + "w2.json", "--seed", "0->1", "--side", "up"}).code == 3);

   const TempFile syntax("enrifact_syntax.json", "{\"kind\": ");
   const Run s = run({"validate", syntax.path.string()});
   CHECK(s.code == 2);
   CHECK(s.report()["error"]["code"] == "SyntaxError");

   Json bad = Json::parse(slurp(corpus + "w2.json"));
   bad["body"]["shape"] = "circle";
   const TempFile directive("enrifact_directive.json", bad.dump());
   CHECK(run({"validate", directive.path.string()}).report()["error"]["code"] == "DirectiveError");
   CHECK(run({"orth", directive.path.string(), "a", "b"}).code == 2);

   // a composition table that is not associative
   RawCategory raw = walking_arrow();
   raw.compose[2] = {"a", "id0", "id0"};
   const TempFile broken("enrifact_broken.json", serialize(make_document("broken", raw)));
   const Run v = run({"validate", broken.path.string()});
   CHECK(v.code == 2);
   CHECK(v.report()["status"] == "error");
}

TEST_CASE("output flags") {
   const TempFile out("enrifact_report.json");
   const Run r = run({"--out", out.path.string(), "orth", corpus + "w2.json", "0->1", "0->1"});
   CHECK(r.code == 1);
   CHECK(r.out.empty());
   const std::string written = slurp(out.path.string());
   CHECK(written == run({"orth", corpus + "w2.json", "0->1", "0->1"}).out);
   CHECK_FALSE(std::filesystem::exists(out.path.string() + ".tmp"));

   const Run text = run({"orth", corpus + "w2.json", "0->1", "0->1", "--format", "text"});
   CHECK(text.out.find("status: fails") != std::string::npos);

   const Run timed = run({"--timing", "canonical", corpus + "w2.json"});
   const Json t = timed.report();
   CHECK(t.contains("timing"));
   CHECK(report_hash(t) == report_hash(run({"canonical", corpus + "w2.json"}).report()));
}

TEST_CASE("document commands") {
   const Run e = run({"expand", corpus + "w2.json"});
   REQUIRE(e.code == 0);
   const Document d = parse_document(e.out);
   CHECK(d.kind == DocumentKind::category);
   const TempFile op("enrifact_op.json", run({"opposite", corpus + "w2.json"}).out);
   const Run back = run({"opposite", op.path.string()});
   CHECK(back.out == e.out);
   const TempFile expanded("enrifact_expanded.json", e.out);
   CHECK(run({"canonicalize", expanded.path.string()}).out == e.out);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
   const std::vector<std::vector<std::string>> commands{
      {"classify", corpus + "strict_gap.json", "--enriched"},
      {"canonical", corpus + "finset3_op.json"},
      {"laws", corpus + "product_gap.json"},
      {"closure", corpus + "chain4_v2.json", "--seed", "0->2", "--side", "left", "--enriched"},
   };
   for(const auto& cmd : commands) {
      INFO(cmd[0]);
      ::setenv("ENRIFACT_THREADS", "1", 1);
      const Run a = run(cmd);
      ::setenv("ENRIFACT_THREADS", "5", 1);
      const Run b = run(cmd);
      ::unsetenv("ENRIFACT_THREADS");
      const Run c = run(cmd);
      CHECK(a.out == b.out);
      CHECK(a.out == c.out);
      CHECK(a.code == c.code);
   }
   ::setenv("ENRIFACT_THREADS", "zero", 1);
   CHECK(run({"canonical", corpus + "w2.json"}).code == 3);
   ::unsetenv("ENRIFACT_THREADS");
}

TEST_CASE("golden reports") {
   for(const char* name : {"orth_finset3_surjection", "classify_w2"}) {
      INFO(name);
      const Json spec = Json::parse(slurp(std::string(ENRIFACT_SOURCE_DIR) + "/tests/golden/" + name + ".args.json"));
      std::vector<std::string> args;
      for(const auto& a : spec["args"]) {
         const std::string s = a.get<std::string>();
         args.push_back(s.starts_with("corpus/") ? std::string(ENRIFACT_SOURCE_DIR) + "/" + s : s);
      }
      const Run r = run(args);
      CHECK(r.code == spec["exit_code"].get<int>());
      CHECK(r.out == slurp(std::string(ENRIFACT_SOURCE_DIR) + "/tests/golden/" + name + ".json"));
   }
}
