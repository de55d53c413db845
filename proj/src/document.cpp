// SPDX-License-Identifier: Apache-2.0

#include <enrifact/document.hpp>

#include <enrifact/error.hpp>

#include "digest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace enrifact {

std::string_view to_string(DocumentKind kind) noexcept {
   switch(kind) {
      case DocumentKind::category: return "category";
      case DocumentKind::monoidal: return "monoidal";
      case DocumentKind::enriched: return "enriched";
      case DocumentKind::generator: return "generator";
   }
   return "?";
}

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
   throw Error(ErrorCode::SchemaError, (path.empty() ? "/" : path) + ": " + what);
}

[[noreturn]] void directive(const std::string& what) {
   throw Error(ErrorCode::DirectiveError, what);
}

std::string child(const std::string& path, const std::string& key) {
   std::string escaped;
   for(char ch : key) {
      if(ch == '~') escaped += "~0";
      else if(ch == '/') escaped += "~1";
      else escaped += ch;
   }
   return path + "/" + escaped;
}

std::string child(const std::string& path, std::size_t i) {
   return path + "/" + std::to_string(i);
}

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
   if(!j.is_object()) schema(path, "expected an object");
   for(const char* key : required) {
      if(!j.contains(key)) schema(child(path, key), "missing");
   }
   for(const auto& [key, value] : j.items()) {
      const auto known = [&](std::initializer_list<const char*> keys) {
         return std::any_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; });
      };
      if(!known(required) && !known(optional)) schema(child(path, key), "unknown key");
   }
}

std::string str(const Json& j, const std::string& path) {
   if(!j.is_string()) schema(path, "expected a string");
   return j.get<std::string>();
}

std::size_t natural(const Json& j, const std::string& path) {
   if(!j.is_number_unsigned()) schema(path, "expected a non-negative integer");
   return j.get<std::size_t>();
}

const Json& array(const Json& j, const std::string& path) {
   if(!j.is_array()) schema(path, "expected an array");
   return j;
}

std::vector<std::string> strings(const Json& j, const std::string& path) {
   std::vector<std::string> out;
   for(std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(str(j[i], child(path, i)));
   return out;
}

template <std::size_t N>
std::vector<std::array<std::string, N>> rows(const Json& j, const std::string& path) {
   std::vector<std::array<std::string, N>> out;
   for(std::size_t i = 0; i < array(j, path).size(); ++i) {
      const std::string p = child(path, i);
      if(!j[i].is_array() || j[i].size() != N) schema(p, "expected an array of " + std::to_string(N) + " strings");
      std::array<std::string, N> row;
      for(std::size_t k = 0; k < N; ++k) row[k] = str(j[i][k], child(p, k));
      out.push_back(std::move(row));
   }
   return out;
}

template <std::size_t N>
std::vector<std::array<std::string, N>> optional_rows(const Json& j, const char* key, const std::string& path) {
   return j.contains(key) ? rows<N>(j[key], child(path, key)) : std::vector<std::array<std::string, N>>{};
}

std::string describe(const std::string& s) {
   return "\"" + s + "\"";
}

template <std::size_t N>
std::string describe(const std::array<std::string, N>& row, std::size_t key) {
   std::string s = "(";
   for(std::size_t k = 0; k < key; ++k) s += (k ? ", " : "") + row[k];
   return s + ")";
}

// Sort set-like data; equal keys are a DuplicateID.
void canonical_ids(std::vector<std::string>& ids, const std::string& what) {
   std::sort(ids.begin(), ids.end());
   const auto dup = std::adjacent_find(ids.begin(), ids.end());
   if(dup != ids.end()) throw Error(ErrorCode::DuplicateID, what + " " + describe(*dup));
}

template <std::size_t N>
void canonical_rows(std::vector<std::array<std::string, N>>& rs, std::size_t key, const std::string& what) {
   std::sort(rs.begin(), rs.end());
   for(std::size_t i = 1; i < rs.size(); ++i) {
      if(std::equal(rs[i].begin(), rs[i].begin() + key, rs[i - 1].begin())) {
         throw Error(ErrorCode::DuplicateID, what + " " + describe(rs[i], key) + " given twice");
      }
   }
}

template <std::size_t N>
Json rows_json(const std::vector<std::array<std::string, N>>& rs) {
   Json out = Json::array();
   for(const auto& r : rs) out.push_back(Json(r));
   return out;
}

void canonicalize(RawCategory& c) {
   canonical_ids(c.objects, "object");
   std::sort(c.morphisms.begin(), c.morphisms.end(), [](const RawMorphism& a, const RawMorphism& b) { return a.id < b.id; });
   for(std::size_t i = 1; i < c.morphisms.size(); ++i) {
      if(c.morphisms[i].id == c.morphisms[i - 1].id) throw Error(ErrorCode::DuplicateID, "morphism " + describe(c.morphisms[i].id));
   }
   canonical_rows(c.compose, 2, "composition entry");
}

void canonicalize(RawMonoidal& m) {
   canonicalize(m.category);
   canonical_rows(m.tensor_obj, 2, "tensor_obj entry");
   canonical_rows(m.tensor_mor, 2, "tensor_mor entry");
   canonical_rows(m.symmetry, 2, "symmetry entry");
   canonical_rows(m.hom_obj, 2, "hom_obj entry");
   canonical_rows(m.curry, 4, "curry entry");
}

void canonicalize(std::vector<RawTableTensor>& ts, const std::string& what) {
   for(auto& t : ts) canonical_rows(t.iso, 1, what + " iso row");
   std::sort(ts.begin(), ts.end(), [](const RawTableTensor& a, const RawTableTensor& b) {
      return std::tie(a.v, a.object, a.result) < std::tie(b.v, b.object, b.result);
   });
   for(std::size_t i = 1; i < ts.size(); ++i) {
      const auto& a = ts[i - 1];
      const auto& b = ts[i];
      if(std::tie(a.v, a.object, a.result) == std::tie(b.v, b.object, b.result)) {
         throw Error(ErrorCode::DuplicateID, what + " (" + b.v + ", " + b.object + ", " + b.result + ") given twice");
      }
   }
}

void canonicalize(std::vector<RawSetTensor>& ts, const std::string& what) {
   std::sort(ts.begin(), ts.end(), [](const RawSetTensor& a, const RawSetTensor& b) {
      return std::tie(a.v, a.object, a.result) < std::tie(b.v, b.object, b.result);
   });
   for(std::size_t i = 1; i < ts.size(); ++i) {
      const auto& a = ts[i - 1];
      const auto& b = ts[i];
      if(std::tie(a.v, a.object, a.result) == std::tie(b.v, b.object, b.result)) {
         throw Error(ErrorCode::DuplicateID, what + " (" + std::to_string(b.v) + ", " + b.object + ", " + b.result + ") given twice");
      }
   }
}

void canonicalize(RawEnriched& raw) {
   if(auto* t = std::get_if<RawTableEnriched>(&raw)) {
      canonicalize(t->values);
      canonical_ids(t->objects, "object");
      canonical_rows(t->hom, 2, "hom entry");
      canonical_rows(t->comp, 3, "comp entry");
      canonical_rows(t->ids, 1, "ids entry");
      canonicalize(t->tensors, "tensor");
      canonicalize(t->cotensors, "cotensor");
   } else {
      auto& s = std::get<RawSetEnriched>(raw);
      canonicalize(s.category);
      canonicalize(s.tensors, "tensor");
      canonicalize(s.cotensors, "cotensor");
   }
}

RawTableTensor table_tensor_from_json(const Json& j, const std::string& path) {
   expect_object(j, path, {"v", "object", "result", "iso"});
   return {str(j["v"], child(path, "v")), str(j["object"], child(path, "object")), str(j["result"], child(path, "result")),
           rows<3>(j["iso"], child(path, "iso"))};
}

RawSetTensor set_tensor_from_json(const Json& j, const std::string& path) {
   expect_object(j, path, {"v", "object", "result", "maps"});
   return {natural(j["v"], child(path, "v")), str(j["object"], child(path, "object")),
           str(j["result"], child(path, "result")), strings(j["maps"], child(path, "maps"))};
}

template <class T, class F>
std::vector<T> list(const Json& j, const char* key, const std::string& path, F read) {
   std::vector<T> out;
   if(!j.contains(key)) return out;
   const std::string p = child(path, key);
   for(std::size_t i = 0; i < array(j[key], p).size(); ++i) out.push_back(read(j[key][i], child(p, i)));
   return out;
}

RawCategory category_at(const Json& j, const std::string& path) {
   expect_object(j, path, {"objects", "morphisms", "identities"}, {"compose"});
   RawCategory c;
   c.objects = strings(j["objects"], child(path, "objects"));
   c.morphisms = list<RawMorphism>(j, "morphisms", path, [](const Json& m, const std::string& p) {
      expect_object(m, p, {"id", "dom", "cod"});
      return RawMorphism{str(m["id"], child(p, "id")), str(m["dom"], child(p, "dom")), str(m["cod"], child(p, "cod"))};
   });
   const std::string ip = child(path, "identities");
   if(!j["identities"].is_object()) schema(ip, "expected an object");
   for(const auto& [obj, id] : j["identities"].items()) c.identities[obj] = str(id, child(ip, obj));
   c.compose = optional_rows<3>(j, "compose", path);
   canonicalize(c);
   return c;
}

RawMonoidal monoidal_at(const Json& j, const std::string& path) {
   expect_object(j, path, {"category", "unit"}, {"tensor_obj", "tensor_mor", "symmetry", "hom_obj", "curry"});
   RawMonoidal m;
   m.category = category_at(j["category"], child(path, "category"));
   m.unit = str(j["unit"], child(path, "unit"));
   m.tensor_obj = optional_rows<3>(j, "tensor_obj", path);
   m.tensor_mor = optional_rows<3>(j, "tensor_mor", path);
   m.symmetry = optional_rows<3>(j, "symmetry", path);
   m.hom_obj = optional_rows<3>(j, "hom_obj", path);
   m.curry = optional_rows<5>(j, "curry", path);
   canonicalize(m);
   return m;
}

RawEnriched enriched_at(const Json& j, const std::string& path) {
   if(!j.is_object()) schema(path, "expected an object");
   if(!j.contains("backend")) schema(child(path, "backend"), "missing");
   const std::string backend = str(j["backend"], child(path, "backend"));
   RawEnriched out;
   if(backend == "table") {
      expect_object(j, path, {"backend", "values", "objects", "hom", "comp", "ids"}, {"tensors", "cotensors"});
      RawTableEnriched t;
      t.values = monoidal_at(j["values"], child(path, "values"));
      t.objects = strings(j["objects"], child(path, "objects"));
      t.hom = rows<3>(j["hom"], child(path, "hom"));
      t.comp = rows<4>(j["comp"], child(path, "comp"));
      t.ids = rows<2>(j["ids"], child(path, "ids"));
      t.tensors = list<RawTableTensor>(j, "tensors", path, table_tensor_from_json);
      t.cotensors = list<RawTableTensor>(j, "cotensors", path, table_tensor_from_json);
      out = std::move(t);
   } else if(backend == "finset") {
      expect_object(j, path, {"backend", "category"}, {"max_size", "dual", "concrete", "tensors", "cotensors"});
      RawSetEnriched s;
      s.category = category_at(j["category"], child(path, "category"));
      if(j.contains("max_size")) s.max_size = natural(j["max_size"], child(path, "max_size"));
      if(j.contains("dual")) {
         if(!j["dual"].is_boolean()) schema(child(path, "dual"), "expected a boolean");
         s.dual = j["dual"].get<bool>();
      }
      if(j.contains("concrete")) {
         const std::string cp = child(path, "concrete");
         const Json& cj = j["concrete"];
         expect_object(cj, cp, {"sizes", "maps"});
         ConcreteSets cs;
         if(!cj["sizes"].is_object()) schema(child(cp, "sizes"), "expected an object");
         for(const auto& [obj, n] : cj["sizes"].items()) cs.sizes[obj] = natural(n, child(child(cp, "sizes"), obj));
         if(!cj["maps"].is_object()) schema(child(cp, "maps"), "expected an object");
         for(const auto& [mor, values] : cj["maps"].items()) {
            const std::string mp = child(child(cp, "maps"), mor);
            std::vector<std::size_t> at;
            for(std::size_t i = 0; i < array(values, mp).size(); ++i) at.push_back(natural(values[i], child(mp, i)));
            cs.maps[mor] = std::move(at);
         }
         s.concrete = std::move(cs);
      }
      s.tensors = list<RawSetTensor>(j, "tensors", path, set_tensor_from_json);
      s.cotensors = list<RawSetTensor>(j, "cotensors", path, set_tensor_from_json);
      out = std::move(s);
   } else {
      schema(child(path, "backend"), "expected \"table\" or \"finset\"");
   }
   canonicalize(out);
   return out;
}

DocumentKind kind_at(const Json& j, const std::string& path) {
   const std::string k = str(j, path);
   if(k == "category") return DocumentKind::category;
   if(k == "monoidal") return DocumentKind::monoidal;
   if(k == "enriched") return DocumentKind::enriched;
   if(k == "generator") return DocumentKind::generator;
   schema(path, "unknown kind " + describe(k));
}

Json canonical_body(DocumentKind kind, const Json& body, const std::string& path);

// Nested documents inside generator directives carry only kind and body.
Json nested_at(const Json& j, const std::string& path) {
   expect_object(j, path, {"kind", "body"});
   const DocumentKind kind = kind_at(j["kind"], child(path, "kind"));
   return Json{{"kind", std::string(to_string(kind))}, {"body", canonical_body(kind, j["body"], child(path, "body"))}};
}

Document nested_document(const Json& j, std::string name) {
   return Document{kind_at(j["kind"], ""), std::move(name), j["body"]};
}

Json generator_at(const Json& j, const std::string& path) {
   if(!j.is_object()) schema(path, "expected an object");
   if(!j.contains("directive")) schema(child(path, "directive"), "missing");
   const std::string d = str(j["directive"], child(path, "directive"));
   Json out{{"directive", d}};
   if(d == "finset") {
      expect_object(j, path, {"directive"}, {"max_size", "sizes"});
      if(j.contains("max_size") == j.contains("sizes")) schema(path, "finset needs exactly one of max_size, sizes");
      if(j.contains("max_size")) {
         out["max_size"] = natural(j["max_size"], child(path, "max_size"));
      } else {
         std::vector<std::size_t> sizes;
         const std::string sp = child(path, "sizes");
         for(std::size_t i = 0; i < array(j["sizes"], sp).size(); ++i) sizes.push_back(natural(j["sizes"][i], child(sp, i)));
         std::sort(sizes.begin(), sizes.end());
         sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
         out["sizes"] = sizes;
      }
   } else if(d == "quantale_chain") {
      expect_object(j, path, {"directive", "n", "tensor"});
      out["n"] = natural(j["n"], child(path, "n"));
      out["tensor"] = str(j["tensor"], child(path, "tensor"));
   } else if(d == "quantale") {
      expect_object(j, path, {"directive", "carrier", "order", "tensor", "unit"});
      auto carrier = strings(j["carrier"], child(path, "carrier"));
      canonical_ids(carrier, "carrier element");
      auto order = rows<2>(j["order"], child(path, "order"));
      canonical_rows(order, 2, "order pair");
      auto tensor = rows<3>(j["tensor"], child(path, "tensor"));
      canonical_rows(tensor, 2, "tensor entry");
      out["carrier"] = carrier;
      out["order"] = rows_json(order);
      out["tensor"] = rows_json(tensor);
      out["unit"] = str(j["unit"], child(path, "unit"));
   } else if(d == "poset") {
      expect_object(j, path, {"directive", "objects", "relation"});
      auto objects = strings(j["objects"], child(path, "objects"));
      canonical_ids(objects, "object");
      auto relation = rows<2>(j["relation"], child(path, "relation"));
      canonical_rows(relation, 2, "relation pair");
      out["objects"] = objects;
      out["relation"] = rows_json(relation);
   } else if(d == "walking") {
      expect_object(j, path, {"directive", "shape"});
      out["shape"] = str(j["shape"], child(path, "shape"));
   } else if(d == "thin_enriched") {
      expect_object(j, path, {"directive", "values", "objects", "hom"});
      auto objects = strings(j["objects"], child(path, "objects"));
      canonical_ids(objects, "object");
      auto hom = rows<3>(j["hom"], child(path, "hom"));
      canonical_rows(hom, 2, "hom entry");
      out["values"] = nested_at(j["values"], child(path, "values"));
      out["objects"] = objects;
      out["hom"] = rows_json(hom);
   } else if(d == "self_enriched") {
      expect_object(j, path, {"directive", "values"});
      out["values"] = nested_at(j["values"], child(path, "values"));
   } else if(d == "opposite") {
      expect_object(j, path, {"directive", "of"});
      out["of"] = nested_at(j["of"], child(path, "of"));
   } else {
      schema(child(path, "directive"), "unknown directive " + describe(d));
   }
   return out;
}

Json canonical_body(DocumentKind kind, const Json& body, const std::string& path) {
   switch(kind) {
      case DocumentKind::category: return to_json(category_at(body, path));
      case DocumentKind::monoidal: return to_json(monoidal_at(body, path));
      case DocumentKind::enriched: return to_json(enriched_at(body, path));
      case DocumentKind::generator: return generator_at(body, path);
   }
   return body;
}

Json envelope(const Document& doc, bool with_hash) {
   Json meta{{"name", doc.name}, {"version", document_version}};
   if(with_hash) meta["hash"] = content_hash(doc);
   return Json{{"kind", std::string(to_string(doc.kind))}, {"body", doc.body}, {"meta", std::move(meta)}};
}

std::string dump(const Json& j) {
   return j.dump(-1, ' ', false, Json::error_handler_t::strict);
}

// ---- generators ----

RawCategory poset_category(const std::vector<std::string>& objects, const std::vector<std::array<std::string, 2>>& relation) {
   const std::size_t n = objects.size();
   auto index = [&](const std::string& x) {
      const auto it = std::lower_bound(objects.begin(), objects.end(), x);
      if(it == objects.end() || *it != x) directive("poset relation names unknown object " + describe(x));
      return static_cast<std::size_t>(it - objects.begin());
   };
   std::vector<char> le(n * n, 0);
   for(std::size_t i = 0; i < n; ++i) le[i * n + i] = 1;
   for(const auto& [x, y] : relation) le[index(x) * n + index(y)] = 1;
   for(std::size_t k = 0; k < n; ++k)
      for(std::size_t i = 0; i < n; ++i)
         for(std::size_t j = 0; j < n; ++j)
            if(le[i * n + k] && le[k * n + j]) le[i * n + j] = 1;
   RawCategory c;
   c.objects = objects;
   for(std::size_t i = 0; i < n; ++i) {
      for(std::size_t j = 0; j < n; ++j) {
         if(!le[i * n + j]) continue;
         if(i != j && le[j * n + i]) directive("poset relation is not antisymmetric at " + describe(objects[i]) + ", " + describe(objects[j]));
         c.morphisms.push_back({thin_arrow(objects[i], objects[j]), objects[i], objects[j]});
         for(std::size_t k = 0; k < n; ++k) {
            if(le[j * n + k]) c.compose.push_back({thin_arrow(objects[j], objects[k]), thin_arrow(objects[i], objects[j]), thin_arrow(objects[i], objects[k])});
         }
      }
      c.identities[objects[i]] = thin_arrow(objects[i], objects[i]);
   }
   return c;
}

RawTableEnriched thin_table(const MonoidalClosedStructure& V, const std::vector<std::string>& objects,
                            const std::map<std::pair<std::string, std::string>, std::string>& hom) {
   if(!V.is_thin()) directive("thin enrichment needs a thin V");
   const FinCategory& vc = V.base();
   auto value = [&](const std::string& a, const std::string& b) {
      const auto it = hom.find({a, b});
      if(it == hom.end()) directive("no hom value for (" + a + ", " + b + ")");
      if(!vc.find_object(it->second)) directive("hom value " + describe(it->second) + " is not a V-object");
      return it->second;
   };
   auto arrow = [&](const std::string& x, const std::string& y) {
      const auto xs = vc.hom(vc.object(x), vc.object(y));
      if(xs.empty()) directive("no V-arrow " + x + " -> " + y + "; the hom values do not compose");
      return vc.morphism_name(xs.front());
   };
   RawTableEnriched b;
   b.values = V.to_raw();
   b.objects = objects;
   const std::string unit = vc.object_name(V.unit());
   for(const auto& a : objects) {
      b.ids.push_back({a, arrow(unit, value(a, a))});
      for(const auto& x : objects) {
         b.hom.push_back({a, x, value(a, x)});
         for(const auto& c : objects) {
            const std::string t = vc.object_name(V.tensor(vc.object(value(x, c)), vc.object(value(a, x))));
            b.comp.push_back({a, x, c, arrow(t, value(a, c))});
         }
      }
   }
   return b;
}

MonoidalClosedStructure values_of(const Json& nested) {
   const Loaded v = load(nested_document(nested, ""));
   if(v.kind != DocumentKind::monoidal) directive("values must be a monoidal document");
   return *v.values;
}

Document run_generator(const Document& doc) {
   const Json& g = doc.body;
   const std::string d = g["directive"].get<std::string>();
   if(d == "finset") {
      std::vector<std::size_t> sizes;
      if(g.contains("max_size")) {
         for(std::size_t k = 0; k <= g["max_size"].get<std::size_t>(); ++k) sizes.push_back(k);
      } else {
         sizes = g["sizes"].get<std::vector<std::size_t>>();
      }
      return make_document(doc.name, RawEnriched(finset_category(sizes)));
   }
   if(d == "quantale_chain") {
      return make_document(doc.name, quantale_tables(quantale_chain(g["n"].get<std::size_t>(), g["tensor"].get<std::string>())));
   }
   if(d == "quantale") {
      QuantaleSpec q;
      q.carrier = g["carrier"].get<std::vector<std::string>>();
      for(const auto& r : g["order"]) q.order.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
      for(const auto& r : g["tensor"]) q.tensor[{r[0].get<std::string>(), r[1].get<std::string>()}] = r[2].get<std::string>();
      q.unit = g["unit"].get<std::string>();
      return make_document(doc.name, quantale_tables(q));
   }
   if(d == "poset") {
      return make_document(doc.name, poset_category(g["objects"].get<std::vector<std::string>>(),
                                                    g["relation"].get<std::vector<std::array<std::string, 2>>>()));
   }
   if(d == "walking") {
      const std::string shape = g["shape"].get<std::string>();
      if(shape == "arrow") return make_document(doc.name, poset_category({"0", "1"}, {{"0", "1"}}));
      if(shape == "square") {
         return make_document(doc.name, poset_category({"0", "1", "2", "3"}, {{"0", "1"}, {"0", "2"}, {"1", "3"}, {"2", "3"}}));
      }
      directive("walking shape must be arrow or square, got " + describe(shape));
   }
   if(d == "thin_enriched") {
      std::map<std::pair<std::string, std::string>, std::string> hom;
      for(const auto& r : g["hom"]) hom[{r[0].get<std::string>(), r[1].get<std::string>()}] = r[2].get<std::string>();
      return make_document(doc.name, RawEnriched(thin_table(values_of(g["values"]), g["objects"].get<std::vector<std::string>>(), hom)));
   }
   if(d == "self_enriched") {
      const MonoidalClosedStructure V = values_of(g["values"]);
      const FinCategory& vc = V.base();
      std::vector<std::string> objects;
      std::map<std::pair<std::string, std::string>, std::string> hom;
      for(ObjId y = 0; y < vc.num_objects(); ++y) {
         objects.push_back(vc.object_name(y));
         for(ObjId z = 0; z < vc.num_objects(); ++z) hom[{vc.object_name(y), vc.object_name(z)}] = vc.object_name(V.hom(y, z));
      }
      return make_document(doc.name, RawEnriched(thin_table(V, objects, hom)));
   }
   Document out = opposite(nested_document(g["of"], ""));
   out.name = doc.name;
   return out;
}

}  // namespace

namespace detail {

std::string sha256_hex(std::string_view text) {
   unsigned char digest[EVP_MAX_MD_SIZE];
   unsigned int len = 0;
   if(EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("SHA-256 failed");
   }
   std::string hex;
   char buf[3];
   for(unsigned int i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof buf, "%02x", digest[i]);
      hex += buf;
   }
   return hex;
}

}  // namespace detail

Json to_json(const RawCategory& raw) {
   RawCategory c = raw;
   canonicalize(c);
   Json morphisms = Json::array();
   for(const auto& m : c.morphisms) morphisms.push_back({{"id", m.id}, {"dom", m.dom}, {"cod", m.cod}});
   Json identities = Json::object();
   for(const auto& [obj, id] : c.identities) identities[obj] = id;
   return {{"objects", c.objects}, {"morphisms", std::move(morphisms)}, {"identities", std::move(identities)}, {"compose", rows_json(c.compose)}};
}

Json to_json(const RawMonoidal& raw) {
   RawMonoidal m = raw;
   canonicalize(m);
   return {{"category", to_json(m.category)}, {"unit", m.unit},          {"tensor_obj", rows_json(m.tensor_obj)},
           {"tensor_mor", rows_json(m.tensor_mor)}, {"symmetry", rows_json(m.symmetry)}, {"hom_obj", rows_json(m.hom_obj)},
           {"curry", rows_json(m.curry)}};
}

Json to_json(const RawEnriched& raw) {
   RawEnriched e = raw;
   canonicalize(e);
   if(const auto* t = std::get_if<RawTableEnriched>(&e)) {
      auto tensors = [](const std::vector<RawTableTensor>& ts) {
         Json out = Json::array();
         for(const auto& x : ts) out.push_back({{"v", x.v}, {"object", x.object}, {"result", x.result}, {"iso", rows_json(x.iso)}});
         return out;
      };
      return {{"backend", "table"},      {"values", to_json(t->values)},        {"objects", t->objects},
              {"hom", rows_json(t->hom)}, {"comp", rows_json(t->comp)},          {"ids", rows_json(t->ids)},
              {"tensors", tensors(t->tensors)}, {"cotensors", tensors(t->cotensors)}};
   }
   const auto& s = std::get<RawSetEnriched>(e);
   auto tensors = [](const std::vector<RawSetTensor>& ts) {
      Json out = Json::array();
      for(const auto& x : ts) out.push_back({{"v", x.v}, {"object", x.object}, {"result", x.result}, {"maps", x.maps}});
      return out;
   };
   Json out{{"backend", "finset"}, {"category", to_json(s.category)}, {"dual", s.dual},
            {"tensors", tensors(s.tensors)}, {"cotensors", tensors(s.cotensors)}};
   if(s.max_size) out["max_size"] = *s.max_size;
   if(s.concrete) {
      Json sizes = Json::object();
      for(const auto& [obj, n] : s.concrete->sizes) sizes[obj] = n;
      Json maps = Json::object();
      for(const auto& [mor, at] : s.concrete->maps) maps[mor] = at;
      out["concrete"] = {{"sizes", std::move(sizes)}, {"maps", std::move(maps)}};
   }
   return out;
}

RawCategory category_from_json(const Json& body) {
   return category_at(body, "");
}

RawMonoidal monoidal_from_json(const Json& body) {
   return monoidal_at(body, "");
}

RawEnriched enriched_from_json(const Json& body) {
   return enriched_at(body, "");
}

Document parse_document(std::string_view text) {
   Json j;
   try {
      j = Json::parse(text.begin(), text.end());
   } catch(const Json::parse_error& e) {
      throw Error(ErrorCode::SyntaxError, "at byte " + std::to_string(e.byte) + ": " + e.what());
   }
   expect_object(j, "", {"kind", "body"}, {"meta"});
   Document doc;
   doc.kind = kind_at(j["kind"], "/kind");
   std::optional<std::string> hash;
   if(j.contains("meta")) {
      const Json& meta = j["meta"];
      expect_object(meta, "/meta", {}, {"name", "version", "hash"});
      if(meta.contains("name")) doc.name = str(meta["name"], "/meta/name");
      if(meta.contains("version") && (!meta["version"].is_number_integer() || meta["version"].get<int>() != document_version)) {
         schema("/meta/version", "expected " + std::to_string(document_version));
      }
      if(meta.contains("hash")) hash = str(meta["hash"], "/meta/hash");
   }
   doc.body = canonical_body(doc.kind, j["body"], "/body");
   if(hash && *hash != content_hash(doc)) schema("/meta/hash", "does not match the content hash " + content_hash(doc));
   return doc;
}

std::string serialize(const Document& doc) {
   return dump(envelope(doc, true));
}

std::string content_hash(const Document& doc) {
   return detail::sha256_hex(dump(envelope(doc, false)));
}

Document make_document(std::string name, const RawCategory& raw) {
   return {DocumentKind::category, std::move(name), to_json(raw)};
}

Document make_document(std::string name, const RawMonoidal& raw) {
   return {DocumentKind::monoidal, std::move(name), to_json(raw)};
}

Document make_document(std::string name, const RawEnriched& raw) {
   return {DocumentKind::enriched, std::move(name), to_json(raw)};
}

Document expand(const Document& doc) {
   if(doc.kind != DocumentKind::generator) return doc;
   Document out = run_generator(Document{doc.kind, doc.name, generator_at(doc.body, "/body")});
   load(out);
   return out;
}

Document opposite(const Document& doc) {
   const Document d = expand(doc);
   const std::string name = d.name.starts_with("op:") ? d.name.substr(3) : "op:" + d.name;
   switch(d.kind) {
      case DocumentKind::category:
         return make_document(name, FinCategory::validate(category_from_json(d.body)).opposite().to_raw());
      case DocumentKind::enriched:
         return make_document(name, EnrichedCategory::validate(enriched_from_json(d.body)).opposite().to_raw());
      default: directive("a monoidal document has no opposite here");
   }
}

Loaded load(const Document& doc) {
   const Document d = expand(doc);
   Loaded out;
   out.kind = d.kind;
   switch(d.kind) {
      case DocumentKind::category:
         out.category = std::make_shared<const EnrichedCategory>(
            EnrichedCategory::from_category(FinCategory::validate(category_from_json(d.body))));
         break;
      case DocumentKind::monoidal: {
         auto v = std::make_shared<const MonoidalClosedStructure>(MonoidalClosedStructure::validate(monoidal_from_json(d.body)));
         out.category = std::make_shared<const EnrichedCategory>(EnrichedCategory::from_category(v->base()));
         out.values = std::move(v);
         break;
      }
      case DocumentKind::enriched:
         out.category = std::make_shared<const EnrichedCategory>(EnrichedCategory::validate(enriched_from_json(d.body)));
         break;
      case DocumentKind::generator: break;
   }
   return out;
}

}  // namespace enrifact
