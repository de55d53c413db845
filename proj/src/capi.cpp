// SPDX-License-Identifier: Apache-2.0

#include <enrifact/enrifact.h>

#include <enrifact/ortho.hpp>
#include <enrifact/report.hpp>

#include <cstdlib>
#include <cstring>

struct enrifact_document {
   enrifact::Document doc;
};

struct enrifact_workspace {
   explicit enrifact_workspace(std::shared_ptr<const enrifact::EnrichedCategory> b) : ws(std::move(b)) {}
   enrifact::Workspace ws;
};

namespace {

using enrifact::ErrorCode;

thread_local std::string last_error;

int status_of(ErrorCode code) {
   return -(static_cast<int>(code) + 1);
}

int fail(int status, std::string detail) {
   last_error = std::move(detail);
   return status;
}

int ok() {
   last_error.clear();
   return ENRIFACT_OK;
}

char* copy(const std::string& s) {
   char* out = static_cast<char*>(std::malloc(s.size() + 1));
   if(out) std::memcpy(out, s.c_str(), s.size() + 1);
   return out;
}

template <class F>
int guarded(F&& f) {
   try {
      return f();
   } catch(const enrifact::Error& e) {
      return fail(status_of(e.code()), e.detail());
   } catch(const std::exception& e) {
      return fail(ENRIFACT_E_INTERNAL, e.what());
   } catch(...) {
      return fail(ENRIFACT_E_INTERNAL, "unknown failure");
   }
}

void emit(const enrifact::CommandResult& r, char** report, int* exit_code) {
   if(report) *report = copy(r.report.dump());
   if(exit_code) *exit_code = r.exit_code;
}

}  // namespace

extern "C" {

const char* enrifact_version(void) {
   return enrifact::engine_version.data();
}

const char* enrifact_status_name(int status) {
   if(status == ENRIFACT_OK) return "OK";
   if(status == ENRIFACT_E_NULL_ARGUMENT) return "NullArgument";
   if(status == ENRIFACT_E_INTERNAL) return "InternalError";
   if(status >= ENRIFACT_E_USAGE && status < 0) return enrifact::to_string(static_cast<ErrorCode>(-status - 1)).data();
   return "Unknown";
}

const char* enrifact_last_error(void) {
   return last_error.c_str();
}

void enrifact_string_free(char* s) {
   std::free(s);
}

int enrifact_document_parse(const char* text, size_t length, enrifact_document** out) {
   if(!text || !out) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   *out = nullptr;
   return guarded([&] {
      *out = new enrifact_document{enrifact::parse_document(std::string_view(text, length))};
      return ok();
   });
}

void enrifact_document_free(enrifact_document* doc) {
   delete doc;
}

int enrifact_document_serialize(const enrifact_document* doc, char** out) {
   if(!doc || !out) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   return guarded([&] {
      *out = copy(enrifact::serialize(doc->doc));
      return ok();
   });
}

int enrifact_document_hash(const enrifact_document* doc, char** out) {
   if(!doc || !out) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   return guarded([&] {
      *out = copy(enrifact::content_hash(doc->doc));
      return ok();
   });
}

int enrifact_document_expand(const enrifact_document* doc, enrifact_document** out) {
   if(!doc || !out) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   *out = nullptr;
   return guarded([&] {
      *out = new enrifact_document{enrifact::expand(doc->doc)};
      return ok();
   });
}

int enrifact_document_opposite(const enrifact_document* doc, enrifact_document** out) {
   if(!doc || !out) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   *out = nullptr;
   return guarded([&] {
      *out = new enrifact_document{enrifact::opposite(doc->doc)};
      return ok();
   });
}

int enrifact_workspace_new(const enrifact_document* doc, enrifact_workspace** out) {
   if(!doc || !out) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   *out = nullptr;
   return guarded([&] {
      *out = new enrifact_workspace(enrifact::load(doc->doc).category);
      return ok();
   });
}

void enrifact_workspace_free(enrifact_workspace* ws) {
   delete ws;
}

int enrifact_workspace_counts(const enrifact_workspace* ws, size_t* objects, size_t* morphisms) {
   if(!ws) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   if(objects) *objects = ws->ws.underlying().num_objects();
   if(morphisms) *morphisms = ws->ws.size();
   return ok();
}

int enrifact_orthogonal(const enrifact_workspace* ws, const char* e, const char* m, int enriched, int* holds) {
   if(!ws || !e || !m || !holds) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   return guarded([&] {
      const auto& c = ws->ws.underlying();
      *holds = ws->ws.orthogonal(c.morphism(e), c.morphism(m), enriched ? enrifact::Mode::enriched : enrifact::Mode::ordinary) ? 1 : 0;
      return ok();
   });
}

int enrifact_execute(const enrifact_document* doc, const char* request, char** report, int* exit_code) {
   if(report) *report = nullptr;
   if(!doc || !request) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   enrifact::Json req;
   const enrifact::Json input = enrifact::input_summary(doc->doc);
   try {
      req = enrifact::Json::parse(request);
   } catch(const enrifact::Json::parse_error& e) {
      emit(enrifact::error_result(nullptr, input, ErrorCode::UsageError, std::string("request is not JSON: ") + e.what()), report, exit_code);
      return fail(ENRIFACT_E_USAGE, "request is not JSON");
   }
   try {
      const enrifact::CommandResult r = enrifact::execute(doc->doc, req);
      emit(r, report, exit_code);
      if(r.report.contains("error")) {
         const std::string code = r.report["error"]["code"].get<std::string>();
         for(int s = ENRIFACT_E_SYNTAX; s >= ENRIFACT_E_USAGE; --s) {
            if(code == enrifact_status_name(s)) return fail(s, r.report["error"]["detail"].get<std::string>());
         }
      }
      return ok();
   } catch(const enrifact::Error& e) {
      emit(enrifact::error_result(req, input, e.code(), e.detail()), report, exit_code);
      return fail(status_of(e.code()), e.detail());
   } catch(const std::exception& e) {
      enrifact::CommandResult r = enrifact::error_result(req, input, ErrorCode::SchemaError, e.what());
      r.report["error"]["code"] = "InternalError";
      emit(r, report, exit_code);
      return fail(ENRIFACT_E_INTERNAL, e.what());
   }
}

int enrifact_error_report(const char* request, int status, const char* detail, char** report, int* exit_code) {
   if(!detail) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   return guarded([&] {
      enrifact::Json req = nullptr;
      if(request) req = enrifact::Json::parse(request, nullptr, false);
      if(req.is_discarded()) req = nullptr;
      ErrorCode code = ErrorCode::UsageError;
      if(status <= ENRIFACT_E_SYNTAX && status >= ENRIFACT_E_USAGE) code = static_cast<ErrorCode>(-status - 1);
      emit(enrifact::error_result(req, nullptr, code, detail), report, exit_code);
      return ok();
   });
}

int enrifact_render(const char* report, const char* format, char** out) {
   if(!report || !format || !out) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   return guarded([&] {
      const auto j = enrifact::Json::parse(report, nullptr, false);
      if(j.is_discarded()) return fail(ENRIFACT_E_USAGE, "report is not JSON");
      *out = copy(enrifact::render(j, format));
      return ok();
   });
}

int enrifact_report_hash(const char* report, char** out) {
   if(!report || !out) return fail(ENRIFACT_E_NULL_ARGUMENT, "null argument");
   return guarded([&] {
      const auto j = enrifact::Json::parse(report, nullptr, false);
      if(j.is_discarded()) return fail(ENRIFACT_E_USAGE, "report is not JSON");
      *out = copy(enrifact::report_hash(j));
      return ok();
   });
}

}  // extern "C"
