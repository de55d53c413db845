// SPDX-License-Identifier: Apache-2.0

#include "run_command.hpp"

#include <enrifact/enrifact.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace enrifact::cli {

namespace {

using Json = nlohmann::json;

constexpr int exit_usage = 3;

struct Freed {
   void operator()(char* s) const { enrifact_string_free(s); }
};
using Owned = std::unique_ptr<char, Freed>;

struct DocFree {
   void operator()(enrifact_document* d) const { enrifact_document_free(d); }
};

std::vector<std::string> split_ids(const std::string& text) {
   std::vector<std::string> ids;
   if(text.empty()) return ids;
   std::size_t start = 0;
   while(true) {
      const std::size_t comma = text.find(',', start);
      ids.push_back(text.substr(start, comma - start));
      if(comma == std::string::npos) break;
      start = comma + 1;
   }
   return ids;
}

bool write_atomically(const std::string& path, const std::string& text, std::string& err) {
   namespace fs = std::filesystem;
   const fs::path target(path);
   fs::path tmp = target;
   tmp += ".tmp";
   {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if(!os || !os.write(text.data(), static_cast<std::streamsize>(text.size())) || !os.flush()) {
         err += "cannot write " + tmp.string() + "\n";
         return false;
      }
   }
   std::error_code ec;
   fs::rename(tmp, target, ec);
   if(ec) {
      err += "cannot rename to " + path + ": " + ec.message() + "\n";
      fs::remove(tmp, ec);
      return false;
   }
   return true;
}

struct Options {
   std::string format = "json";
   std::string out_path;
   bool timing = false;
   std::string file;
   bool enriched = false;
   std::string e, m, g;
   std::string seed_ids, side, left_ids, right_ids, right_class;
   std::vector<std::string> laws;
   std::optional<std::uint64_t> law_seed;
};

// Pure-output commands print a document rather than a report.
bool document_command(const std::string& name) {
   return name == "expand" || name == "opposite" || name == "canonicalize";
}

Json request_for(const std::string& name, const Options& o) {
   Json args = Json::object();
   if(name == "classify") {
      args["enriched"] = o.enriched;
   } else if(name == "orth") {
      args = {{"e", o.e}, {"m", o.m}, {"enriched", o.enriched}};
   } else if(name == "closure") {
      args = {{"seed", split_ids(o.seed_ids)}, {"side", o.side}, {"enriched", o.enriched}};
   } else if(name == "factorize") {
      static const std::vector<std::string> predicates{"monos", "v-monos", "strong-monos", "injections"};
      const bool predicate = std::find(predicates.begin(), predicates.end(), o.right_class) != predicates.end();
      args = {{"g", o.g}, {"right_class", predicate ? Json(o.right_class) : Json(split_ids(o.right_class))}};
   } else if(name == "check-system") {
      args = {{"left", split_ids(o.left_ids)}, {"right", split_ids(o.right_ids)}, {"enriched", o.enriched}};
   } else if(name == "laws") {
      if(!o.laws.empty()) args["only"] = o.laws;
      if(o.law_seed) args["seed"] = *o.law_seed;
   }
   return {{"command", name}, {"args", args}};
}

struct Emitter {
   const Options& o;
   std::string& out;
   std::string& err;

   int finish(const std::string& report, int code, std::optional<double> elapsed_ms) {
      std::string text = report;
      if(elapsed_ms) {
         Json j = Json::parse(text);
         j["timing"] = {{"elapsed_ms", *elapsed_ms}};
         text = j.dump();
      }
      char* rendered = nullptr;
      if(enrifact_render(text.c_str(), o.format.c_str(), &rendered) != ENRIFACT_OK) {
         err += std::string("error: ") + enrifact_last_error() + "\n";
         return exit_usage;
      }
      const Owned guard(rendered);
      return write(rendered) ? code : exit_usage;
   }

   bool write(const std::string& text) {
      if(o.out_path.empty()) {
         out += text;
         return true;
      }
      return write_atomically(o.out_path, text, err);
   }

   int error(const Json& request, int status, const std::string& detail) {
      err += std::string("error: ") + enrifact_status_name(status) + ": " + detail + "\n";
      char* report = nullptr;
      int code = exit_usage;
      enrifact_error_report(request.dump().c_str(), status, detail.c_str(), &report, &code);
      const Owned guard(report);
      if(!report) return code;
      const int written = finish(report, code, std::nullopt);
      return written == exit_usage ? exit_usage : code;
   }
};

}  // namespace

int run_command(const std::vector<std::string>& argv, std::string& out, std::string& err) {
   Options o;
   CLI::App app{"Finite (enriched) categories: orthogonality and factorization systems", "enrifact"};
   app.require_subcommand(1);
   app.fallthrough();
   app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
   app.add_option("--out", o.out_path, "Write the report to PATH instead of standard output");
   app.add_flag("--timing", o.timing, "Add wall-clock timing to the report");

   auto command = [&](const char* name, const char* help) {
      CLI::App* sub = app.add_subcommand(name, help);
      sub->add_option("FILE", o.file, "Category document")->required();
      return sub;
   };
   auto enriched = [&](CLI::App* sub) { sub->add_flag("--enriched", o.enriched, "Use enriched orthogonality"); };

   command("validate", "Validate a document");
   enriched(command("classify", "Classify every morphism"));
   CLI::App* orth = command("orth", "Decide e orthogonal to m");
   orth->add_option("E_ID", o.e)->required();
   orth->add_option("M_ID", o.m)->required();
   enriched(orth);
   CLI::App* closure = command("closure", "Prefactorization closure of a seed class");
   closure->add_option("--seed", o.seed_ids, "Comma-separated morphism IDs")->required();
   closure->add_option("--side", o.side, "left or right")->required()->check(CLI::IsMember({"left", "right"}));
   enriched(closure);
   CLI::App* factorize = command("factorize", "Factor G through the wide-intersection construction");
   factorize->add_option("G_ID", o.g)->required();
   factorize->add_option("--right-class", o.right_class, "monos, v-monos, strong-monos, injections, or comma-separated IDs")->required();
   CLI::App* check = command("check-system", "Certify a factorization system");
   check->add_option("--left", o.left_ids, "Comma-separated morphism IDs")->required();
   check->add_option("--right", o.right_ids, "Comma-separated morphism IDs")->required();
   enriched(check);
   command("canonical", "Canonical factorization systems");
   CLI::App* laws = command("laws", "Run the invariant suite");
   laws->add_option("--law", o.laws, "Law ID to run (repeatable)");
   laws->add_option("--seed", o.law_seed, "Seed for sampled laws");
   command("fwc", "Finite well-completeness");
   command("expand", "Print the canonical expanded document");
   command("opposite", "Print the canonical opposite document");
   command("canonicalize", "Print the canonical form of a document");

   std::vector<std::string> args(argv.rbegin(), argv.rend());
   if(!args.empty()) args.pop_back();
   Emitter emit{o, out, err};
   try {
      app.parse(args);
   } catch(const CLI::CallForHelp&) {
      out += app.help();
      return 0;
   } catch(const CLI::ParseError& e) {
      err += app.help();
      return emit.error(nullptr, ENRIFACT_E_USAGE, e.what());
   }

   const std::string name = app.get_subcommands().front()->get_name();
   const Json request = document_command(name) ? Json{{"command", name}} : request_for(name, o);

   std::ifstream in(o.file, std::ios::binary);
   std::stringstream buffer;
   if(!in || !(buffer << in.rdbuf())) return emit.error(request, ENRIFACT_E_USAGE, "cannot read " + o.file);
   const std::string text = buffer.str();

   const auto start = std::chrono::steady_clock::now();
   enrifact_document* raw = nullptr;
   const int parsed = enrifact_document_parse(text.data(), text.size(), &raw);
   const std::unique_ptr<enrifact_document, DocFree> doc(raw);
   if(parsed != ENRIFACT_OK) return emit.error(request, parsed, enrifact_last_error());

   if(document_command(name)) {
      enrifact_document* produced = nullptr;
      int status = ENRIFACT_OK;
      if(name == "expand") status = enrifact_document_expand(doc.get(), &produced);
      else if(name == "opposite") status = enrifact_document_opposite(doc.get(), &produced);
      const std::unique_ptr<enrifact_document, DocFree> result(produced);
      if(status != ENRIFACT_OK) return emit.error(request, status, enrifact_last_error());
      char* serialized = nullptr;
      status = enrifact_document_serialize(result ? result.get() : doc.get(), &serialized);
      const Owned guard(serialized);
      if(status != ENRIFACT_OK) return emit.error(request, status, enrifact_last_error());
      return emit.write(std::string(serialized) + "\n") ? 0 : exit_usage;
   }

   char* report = nullptr;
   int code = exit_usage;
   const int status = enrifact_execute(doc.get(), request.dump().c_str(), &report, &code);
   const Owned guard(report);
   if(status != ENRIFACT_OK) err += std::string("error: ") + enrifact_status_name(status) + ": " + enrifact_last_error() + "\n";
   if(!report) return code;
   std::optional<double> elapsed;
   if(o.timing) elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
   return emit.finish(report, code, elapsed);
}

}  // namespace enrifact::cli
