// SPDX-License-Identifier: Apache-2.0

#include <enrifact/report.hpp>

#include <enrifact/factor.hpp>
#include <enrifact/laws.hpp>

#include "digest.hpp"

#include <sstream>

namespace enrifact {

int exit_code_for(ErrorCode code) noexcept {
   return code == ErrorCode::UsageError ? exit_usage : exit_invalid;
}

namespace {

[[noreturn]] void usage(const std::string& what) {
   throw Error(ErrorCode::UsageError, what);
}

const Json& args_of(const Json& request) {
   static const Json empty = Json::object();
   if(!request.is_object() || !request.contains("command") || !request["command"].is_string()) {
      usage("request needs a command name");
   }
   if(!request.contains("args")) return empty;
   if(!request["args"].is_object()) usage("request args must be an object");
   return request["args"];
}

void allow(const Json& args, std::initializer_list<const char*> keys) {
   for(const auto& [key, value] : args.items()) {
      if(std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) usage("unexpected argument " + key);
   }
}

bool flag(const Json& args, const char* key) {
   if(!args.contains(key)) return false;
   if(!args[key].is_boolean()) usage(std::string(key) + " must be a boolean");
   return args[key].get<bool>();
}

std::string text_arg(const Json& args, const char* key) {
   if(!args.contains(key) || !args[key].is_string()) usage(std::string("missing argument ") + key);
   return args[key].get<std::string>();
}

std::vector<std::string> id_list(const Json& args, const char* key) {
   if(!args.contains(key) || !args[key].is_array()) usage(std::string("missing ID list ") + key);
   std::vector<std::string> ids;
   for(const auto& x : args[key]) {
      if(!x.is_string()) usage(std::string(key) + " must list string IDs");
      ids.push_back(x.get<std::string>());
   }
   return ids;
}

MorId morphism_arg(const FinCategory& c, const Json& args, const char* key) {
   const std::string id = text_arg(args, key);
   const auto f = c.find_morphism(id);
   if(!f) usage(std::string(key) + " names no morphism: \"" + id + "\"");
   return *f;
}

MorphismClass class_arg(const FinCategory& c, const Json& args, const char* key) {
   const auto ids = id_list(args, key);
   for(const auto& id : ids) {
      if(!c.find_morphism(id)) usage(std::string(key) + " names no morphism: \"" + id + "\"");
   }
   return MorphismClass::from_ids(c, ids, std::string("given(") + key + ")");
}

Mode mode_of(const Json& args) {
   return flag(args, "enriched") ? Mode::enriched : Mode::ordinary;
}

Json flags_entry(const Workspace& ws, MorId f, bool enriched) {
   const FinCategory& c = ws.underlying();
   const MorphismFlags& k = ws.flags()[f];
   const ObjId a = c.dom(f);
   const ObjId b = c.cod(f);
   Json out{{"id", c.morphism_name(f)}, {"dom", c.object_name(a)}, {"cod", c.object_name(b)}, {"flags", to_json(k)}};
   Json evidence = Json::object();
   if(!k.mono) {
      for(ObjId x = 0; x < c.num_objects() && !evidence.contains("mono"); ++x) {
         const auto hs = c.hom(x, a);
         for(std::size_t i = 0; i < hs.size() && !evidence.contains("mono"); ++i)
            for(std::size_t j = i + 1; j < hs.size(); ++j)
               if(c.compose(f, hs[i]) == c.compose(f, hs[j])) {
                  evidence["mono"] = {{"x", c.morphism_name(hs[i])}, {"y", c.morphism_name(hs[j])}};
                  break;
               }
      }
   }
   if(!k.epi) {
      for(ObjId x = 0; x < c.num_objects() && !evidence.contains("epi"); ++x) {
         const auto hs = c.hom(b, x);
         for(std::size_t i = 0; i < hs.size() && !evidence.contains("epi"); ++i)
            for(std::size_t j = i + 1; j < hs.size(); ++j)
               if(c.compose(hs[i], f) == c.compose(hs[j], f)) {
                  evidence["epi"] = {{"x", c.morphism_name(hs[i])}, {"y", c.morphism_name(hs[j])}};
                  break;
               }
      }
   }
   for(MorId r : c.hom(b, a)) {
      const bool left = c.compose(r, f) == c.identity(a);
      const bool right = c.compose(f, r) == c.identity(b);
      if(left && !evidence.contains("section")) evidence["section"] = {{"retraction", c.morphism_name(r)}};
      if(right && !evidence.contains("retraction")) evidence["retraction"] = {{"section", c.morphism_name(r)}};
      if(left && right && !evidence.contains("iso")) evidence["iso"] = {{"inverse", c.morphism_name(r)}};
   }
   if(enriched) {
      const VFlags& v = ws.v_flags()[f];
      out["v_flags"] = to_json(v);
      const EnrichedCategory& e = ws.category();
      for(ObjId x = 0; x < c.num_objects(); ++x) {
         if(!v.v_mono && !evidence.contains("v_mono") && !is_mono_in_values(e, hom_action(e, x, f, Variance::co))) {
            evidence["v_mono"] = {{"object", c.object_name(x)}, {"issue", "HomActionNotMono"}};
         }
         if(!v.v_epi && !evidence.contains("v_epi") && !is_mono_in_values(e, hom_action(e, x, f, Variance::contra))) {
            evidence["v_epi"] = {{"object", c.object_name(x)}, {"issue", "HomActionNotMono"}};
         }
      }
   }
   out["evidence"] = std::move(evidence);
   return out;
}

MorphismClass injections(const Workspace& ws) {
   const EnrichedCategory& b = ws.category();
   if(b.backend() != Backend::finset || !b.concrete()) usage("injections needs a finite-set document with concrete maps");
   if(b.dual()) usage("injections is not defined on an opposite finite-set document");
   const FinCategory& c = ws.underlying();
   MorphismClass k = MorphismClass::none(c.num_morphisms(), "predicate(injections)");
   for(MorId f = 0; f < c.num_morphisms(); ++f) {
      const auto it = b.concrete()->maps.find(c.morphism_name(f));
      if(it == b.concrete()->maps.end()) usage("no concrete map for " + c.morphism_name(f));
      std::vector<std::size_t> seen = it->second;
      std::sort(seen.begin(), seen.end());
      k.members[f] = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
   }
   return k;
}

MorphismClass right_class_spec(const Workspace& ws, const Json& spec) {
   const FinCategory& c = ws.underlying();
   if(spec.is_array()) {
      const Json wrapped{{"right_class", spec}};
      return class_arg(c, wrapped, "right_class");
   }
   if(!spec.is_string()) usage("right_class must be a predicate name or an ID list");
   const std::string name = spec.get<std::string>();
   if(name == "monos") return ws.monos();
   if(name == "v-monos") return ws.v_monos();
   if(name == "strong-monos") return strong_mono_class(ws, Mode::enriched);
   if(name == "injections") return injections(ws);
   usage("unknown class predicate \"" + name + "\"");
}

struct Outcome {
   bool holds = true;
   Json result;
};

Outcome run_validate(const Loaded& l, const Document& doc) {
   const FinCategory& c = l.category->underlying();
   const Document expanded = expand(doc);
   Json result{{"kind", std::string(to_string(expanded.kind))},
               {"objects", c.num_objects()},
               {"morphisms", c.num_morphisms()},
               {"backend", l.category->backend() == Backend::table ? "table" : "finset"}};
   if(l.values) {
      result["values"] = {{"objects", l.values->base().num_objects()}, {"morphisms", l.values->base().num_morphisms()}, {"thin", l.values->is_thin()}};
   }
   return {true, std::move(result)};
}

Outcome run_classify(const Workspace& ws, const Json& args) {
   allow(args, {"enriched"});
   const bool enriched = flag(args, "enriched");
   const FinCategory& c = ws.underlying();
   Json morphisms = Json::array();
   for(MorId f = 0; f < c.num_morphisms(); ++f) morphisms.push_back(flags_entry(ws, f, enriched));
   Json classes{{"monos", to_json(c, ws.monos())}, {"epis", to_json(c, ws.epis())}, {"isos", to_json(c, ws.isos())}};
   if(enriched) {
      classes["v_monos"] = to_json(c, ws.v_monos());
      classes["v_epis"] = to_json(c, ws.v_epis());
      classes["v_regular_monos"] = to_json(c, ws.v_regular_monos());
      classes["v_regular_epis"] = to_json(c, ws.v_regular_epis());
      classes["strong_monos"] = to_json(c, strong_mono_class(ws, Mode::enriched));
      classes["strong_epis"] = to_json(c, strong_epi_class(ws, Mode::enriched));
   }
   return {true, {{"mode", enriched ? "enriched" : "ordinary"}, {"morphisms", std::move(morphisms)}, {"classes", std::move(classes)}}};
}

Outcome run_orth(const Workspace& ws, const Json& args) {
   allow(args, {"e", "m", "enriched"});
   const FinCategory& c = ws.underlying();
   const MorId e = morphism_arg(c, args, "e");
   const MorId m = morphism_arg(c, args, "m");
   const Mode mode = mode_of(args);
   const Verdict v = mode == Mode::enriched ? is_v_orthogonal(ws.category(), e, m) : is_orthogonal(c, e, m);
   return {v.holds, {{"e", c.morphism_name(e)}, {"m", c.morphism_name(m)}, {"mode", std::string(to_string(mode))}, {"verdict", to_json(v)}}};
}

Outcome run_closure(const Workspace& ws, const Json& args) {
   allow(args, {"seed", "side", "enriched"});
   const FinCategory& c = ws.underlying();
   const MorphismClass seed = class_arg(c, args, "seed");
   const std::string side_name = text_arg(args, "side");
   if(side_name != "left" && side_name != "right") usage("side must be left or right");
   const Side side = side_name == "left" ? Side::left : Side::right;
   const Mode mode = mode_of(args);
   const Prefactorization p = prefactorization_closure(ws, seed, side, mode);
   const Verdict check = is_prefactorization_system(ws, p.left, p.right, mode);
   return {check.holds,
           {{"seed", to_json(c, seed)},
            {"side", side_name},
            {"mode", std::string(to_string(mode))},
            {"left", to_json(c, p.left)},
            {"right", to_json(c, p.right)},
            {"check", to_json(check)}}};
}

Outcome run_factorize(const Workspace& ws, const Json& args) {
   allow(args, {"g", "right_class"});
   const FinCategory& c = ws.underlying();
   const MorId g = morphism_arg(c, args, "g");
   if(!args.contains("right_class")) usage("missing argument right_class");
   const MorphismClass M = right_class_spec(ws, args["right_class"]);
   Json result{{"g", c.morphism_name(g)}, {"right_class", {{"spec", args["right_class"]}, {"members", to_json(c, M)}}}};
   const Verdict hyp = intersection_hypotheses(ws, M);
   result["hypotheses"] = to_json(hyp);
   result["factorization"] = nullptr;
   if(!hyp.holds) return {false, std::move(result)};
   try {
      const Factorization fz = factorize_via_intersection(ws, g, M);
      result["factorization"] = {{"e", c.morphism_name(fz.e)},
                                 {"m", c.morphism_name(fz.m)},
                                 {"composite", c.morphism_name(c.compose(fz.m, fz.e))},
                                 {"middle", c.object_name(c.cod(fz.e))}};
   } catch(const Error& err) {
      if(err.code() == ErrorCode::UsageError) throw;
      result["failure"] = {{"code", std::string(to_string(err.code()))}, {"detail", err.detail()}};
      return {false, std::move(result)};
   }
   return {true, std::move(result)};
}

Outcome run_check_system(const Workspace& ws, const Json& args) {
   allow(args, {"left", "right", "enriched"});
   const FinCategory& c = ws.underlying();
   const MorphismClass E = class_arg(c, args, "left");
   const MorphismClass M = class_arg(c, args, "right");
   const Mode mode = mode_of(args);
   const Verdict v = is_factorization_system(ws, E, M, mode);
   return {v.holds, {{"left", to_json(c, E)}, {"right", to_json(c, M)}, {"mode", std::string(to_string(mode))}, {"verdict", to_json(v)}}};
}

Outcome run_canonical(const Workspace& ws, const Json& args) {
   allow(args, {});
   const CanonicalReport r = canonical_systems(ws);
   return {r.epi_strong_mono.verdict.holds && r.strong_epi_mono.verdict.holds, to_json(ws.underlying(), r)};
}

Outcome run_laws_command(const Workspace& ws, const Json& args) {
   allow(args, {"only", "seed"});
   LawOptions opt;
   if(args.contains("only")) opt.only = id_list(args, "only");
   if(args.contains("seed")) {
      if(!args["seed"].is_number_unsigned()) usage("seed must be a non-negative integer");
      opt.seed = args["seed"].get<std::uint64_t>();
   }
   const auto results = run_laws(ws, opt);
   Json laws = Json::array();
   std::size_t failed = 0;
   std::size_t instances = 0;
   for(const auto& r : results) {
      laws.push_back(to_json(r));
      failed += r.holds() ? 0 : 1;
      instances += r.instances;
   }
   return {failed == 0,
           {{"seed", opt.seed},
            {"random_classes", opt.random_classes},
            {"pasted_squares", opt.pasted_squares},
            {"laws", std::move(laws)},
            {"laws_failed", failed},
            {"instances", instances}}};
}

Outcome run_fwc(const Workspace& ws, const Json& args) {
   allow(args, {});
   const FWCReport r = check_fwc(ws);
   return {r.has_finite_v_limits && r.has_strong_mono_v_intersections, to_json(r)};
}

Json base_report(const Json& request, const Json& input) {
   return {{"command", request}, {"engine", {{"name", engine_name}, {"version", engine_version}}}, {"input", input}};
}

}  // namespace

Json input_summary(const Document& doc) {
   return {{"name", doc.name}, {"kind", std::string(to_string(doc.kind))}, {"hash", content_hash(doc)}};
}

CommandResult error_result(const Json& request, const Json& input, ErrorCode code, const std::string& detail) {
   CommandResult r;
   r.exit_code = exit_code_for(code);
   r.report = base_report(request, input);
   r.report["status"] = "error";
   r.report["error"] = {{"code", std::string(to_string(code))}, {"detail", detail}};
   r.report["exit_code"] = r.exit_code;
   return r;
}

CommandResult execute(const Document& doc, const Json& request) {
   const Json input = input_summary(doc);
   const Json& args = args_of(request);
   const std::string command = request["command"].get<std::string>();
   static const std::vector<std::string> commands{"validate", "classify", "orth", "closure", "factorize", "check-system", "canonical", "laws", "fwc"};
   if(std::find(commands.begin(), commands.end(), command) == commands.end()) usage("unknown command " + command);
   for(const auto& [key, value] : request.items()) {
      if(key != "command" && key != "args") usage("unexpected request field " + key);
   }

   Loaded loaded;
   try {
      loaded = load(doc);
   } catch(const Error& err) {
      // a document error is never a usage error, whatever the code
      CommandResult r = error_result(request, input, err.code(), err.detail());
      r.exit_code = exit_invalid;
      r.report["exit_code"] = exit_invalid;
      return r;
   }
   const Workspace ws(loaded.category);
   Outcome out;
   if(command == "validate") {
      allow(args, {});
      out = run_validate(loaded, doc);
   } else if(command == "classify") {
      out = run_classify(ws, args);
   } else if(command == "orth") {
      out = run_orth(ws, args);
   } else if(command == "closure") {
      out = run_closure(ws, args);
   } else if(command == "factorize") {
      out = run_factorize(ws, args);
   } else if(command == "check-system") {
      out = run_check_system(ws, args);
   } else if(command == "canonical") {
      out = run_canonical(ws, args);
   } else if(command == "laws") {
      out = run_laws_command(ws, args);
   } else {
      out = run_fwc(ws, args);
   }
   CommandResult r;
   r.exit_code = out.holds ? exit_holds : exit_fails;
   r.report = base_report(request, input);
   r.report["status"] = out.holds ? "holds" : "fails";
   r.report["result"] = std::move(out.result);
   r.report["exit_code"] = r.exit_code;
   return r;
}

std::string report_hash(const Json& report) {
   Json copy = report;
   if(copy.is_object()) copy.erase("timing");
   return detail::sha256_hex(copy.dump(-1, ' ', false, Json::error_handler_t::strict));
}

std::string render(const Json& report, std::string_view format) {
   if(format == "json") return report.dump(-1, ' ', false, Json::error_handler_t::strict) + "\n";
   if(format != "text") usage("format must be json or text");
   std::ostringstream os;
   const auto line = [&](const char* key, const Json& value) {
      os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
   };
   if(report.contains("command")) line("command", report["command"]);
   if(report.contains("input")) {
      const Json& in = report["input"];
      os << "input: " << in.value("name", "") << " (" << in.value("kind", "") << ", sha256 " << in.value("hash", "") << ")\n";
   }
   if(report.contains("engine")) os << "engine: " << report["engine"].value("name", "") << " " << report["engine"].value("version", "") << "\n";
   if(report.contains("status")) line("status", report["status"]);
   if(report.contains("error")) os << "error: " << report["error"].value("code", "") << ": " << report["error"].value("detail", "") << "\n";
   if(report.contains("result")) os << "result:\n" << report["result"].dump(2) << "\n";
   if(report.contains("timing")) line("timing", report["timing"]);
   if(report.contains("exit_code")) line("exit code", report["exit_code"]);
   return os.str();
}

}  // namespace enrifact
