// SPDX-License-Identifier: Apache-2.0

#include <enrifact/error.hpp>
#include <enrifact/monoidal.hpp>

#include <algorithm>
#include <set>

namespace enrifact {

namespace {

template <std::size_t N>
void fill_pair_table(const FinCategory& c, const std::vector<std::array<std::string, N>>& rows, bool objects_in,
                     bool objects_out, std::size_t width, std::vector<std::size_t>& table, const char* what) {
   table.assign(width * width, no_id);
   for(const auto& row : rows) {
      const std::size_t a = objects_in ? c.object(row[0]) : c.morphism(row[0]);
      const std::size_t b = objects_in ? c.object(row[1]) : c.morphism(row[1]);
      const std::size_t r = objects_out ? c.object(row[2]) : c.morphism(row[2]);
      auto& slot = table[a * width + b];
      if(slot != no_id) {
         throw Error(ErrorCode::DuplicateID, std::string(what) + " entry (" + row[0] + ", " + row[1] + ") given twice");
      }
      slot = r;
   }
   for(std::size_t a = 0; a < width; ++a) {
      for(std::size_t b = 0; b < width; ++b) {
         if(table[a * width + b] == no_id) {
            const auto& na = objects_in ? c.object_name(a) : c.morphism_name(a);
            const auto& nb = objects_in ? c.object_name(b) : c.morphism_name(b);
            throw Error(ErrorCode::SchemaError, std::string(what) + " missing entry (" + na + ", " + nb + ")");
         }
      }
   }
}

}  // namespace

std::string thin_arrow(const std::string& x, const std::string& y) {
   return x + "->" + y;
}

MonoidalClosedStructure MonoidalClosedStructure::validate(const RawMonoidal& raw) {
   MonoidalClosedStructure s;
   s.base_ = FinCategory::validate(raw.category);
   const FinCategory& c = s.base_;
   s.unit_ = c.object(raw.unit);

   fill_pair_table(c, raw.tensor_obj, true, true, c.num_objects(), s.tensor_obj_, "tensor_obj");
   fill_pair_table(c, raw.tensor_mor, false, false, c.num_morphisms(), s.tensor_mor_, "tensor_mor");
   fill_pair_table(c, raw.symmetry, true, false, c.num_objects(), s.symmetry_, "symmetry");
   fill_pair_table(c, raw.hom_obj, true, true, c.num_objects(), s.hom_obj_, "hom_obj");

   for(const auto& [xs, ys, zs, hs, ks] : raw.curry) {
      const ObjId x = c.object(xs);
      const ObjId y = c.object(ys);
      const ObjId z = c.object(zs);
      const MorId h = c.morphism(hs);
      const MorId k = c.morphism(ks);
      if(c.dom(h) != s.tensor(x, y) || c.cod(h) != z || c.dom(k) != x || c.cod(k) != s.hom(y, z)) {
         throw Error(ErrorCode::CurryNotBijective, "curry entry (" + xs + ", " + ys + ", " + zs + ", " + hs + ", " + ks +
                                                      ") is ill-typed");
      }
      if(!s.curry_.emplace(std::tuple{x, y, h}, k).second) {
         throw Error(ErrorCode::DuplicateID, "curry entry (" + xs + ", " + ys + ", " + hs + ") given twice");
      }
      if(!s.uncurry_.emplace(std::tuple{x, y, z, k}, h).second) {
         throw Error(ErrorCode::CurryNotBijective,
                     "curry not injective at (" + xs + ", " + ys + ", " + zs + "): two maps curry to " + ks);
      }
   }

   s.check_functorial();
   s.check_strict();
   s.check_symmetry();
   s.check_closed();
   return s;
}

void MonoidalClosedStructure::check_functorial() const {
   const FinCategory& c = base_;
   const std::size_t n = c.num_morphisms();
   for(MorId f = 0; f < n; ++f) {
      for(MorId g = 0; g < n; ++g) {
         const MorId fg = tensor_mor(f, g);
         if(c.dom(fg) != tensor(c.dom(f), c.dom(g)) || c.cod(fg) != tensor(c.cod(f), c.cod(g))) {
            throw Error(ErrorCode::InterchangeViolation,
                        c.morphism_name(f) + " (x) " + c.morphism_name(g) + " = " + c.morphism_name(fg) + " is ill-typed");
         }
      }
   }
   for(ObjId x = 0; x < c.num_objects(); ++x) {
      for(ObjId y = 0; y < c.num_objects(); ++y) {
         if(tensor_mor(c.identity(x), c.identity(y)) != c.identity(tensor(x, y))) {
            throw Error(ErrorCode::InterchangeViolation,
                        "id (x) id is not an identity at (" + c.object_name(x) + ", " + c.object_name(y) + ")");
         }
      }
   }
   for(MorId f1 = 0; f1 < n; ++f1) {
      for(MorId g1 = 0; g1 < n; ++g1) {
         if(!c.composable(g1, f1)) continue;
         for(MorId f2 = 0; f2 < n; ++f2) {
            for(MorId g2 = 0; g2 < n; ++g2) {
               if(!c.composable(g2, f2)) continue;
               const MorId lhs = tensor_mor(c.compose(g1, f1), c.compose(g2, f2));
               const MorId rhs = c.compose(tensor_mor(g1, g2), tensor_mor(f1, f2));
               if(lhs != rhs) {
                  throw Error(ErrorCode::InterchangeViolation,
                              "(" + c.morphism_name(g1) + "." + c.morphism_name(f1) + ") (x) (" + c.morphism_name(g2) +
                                 "." + c.morphism_name(f2) + ")");
               }
            }
         }
      }
   }
}

void MonoidalClosedStructure::check_strict() const {
   const FinCategory& c = base_;
   for(ObjId x = 0; x < c.num_objects(); ++x) {
      if(tensor(unit_, x) != x || tensor(x, unit_) != x) {
         throw Error(ErrorCode::UnitViolation, "I (x) " + c.object_name(x) + " or " + c.object_name(x) + " (x) I");
      }
   }
   const MorId id_unit = c.identity(unit_);
   for(MorId f = 0; f < c.num_morphisms(); ++f) {
      if(tensor_mor(id_unit, f) != f || tensor_mor(f, id_unit) != f) {
         throw Error(ErrorCode::UnitViolation, "id_I (x) " + c.morphism_name(f));
      }
   }
   for(ObjId x = 0; x < c.num_objects(); ++x) {
      for(ObjId y = 0; y < c.num_objects(); ++y) {
         for(ObjId z = 0; z < c.num_objects(); ++z) {
            if(tensor(tensor(x, y), z) != tensor(x, tensor(y, z))) {
               throw Error(ErrorCode::NotAssociative,
                           "(" + c.object_name(x) + ", " + c.object_name(y) + ", " + c.object_name(z) + ")");
            }
         }
      }
   }
   const std::size_t n = c.num_morphisms();
   for(MorId f = 0; f < n; ++f) {
      for(MorId g = 0; g < n; ++g) {
         for(MorId h = 0; h < n; ++h) {
            if(tensor_mor(tensor_mor(f, g), h) != tensor_mor(f, tensor_mor(g, h))) {
               throw Error(ErrorCode::NotAssociative, "(" + c.morphism_name(f) + ", " + c.morphism_name(g) + ", " +
                                                         c.morphism_name(h) + ")");
            }
         }
      }
   }
}

void MonoidalClosedStructure::check_symmetry() const {
   const FinCategory& c = base_;
   const std::size_t no = c.num_objects();
   for(ObjId x = 0; x < no; ++x) {
      for(ObjId y = 0; y < no; ++y) {
         const MorId s = symmetry(x, y);
         const std::string at = "(" + c.object_name(x) + ", " + c.object_name(y) + ")";
         if(c.dom(s) != tensor(x, y) || c.cod(s) != tensor(y, x)) {
            throw Error(ErrorCode::SymmetryNotIso, "symmetry component ill-typed at " + at);
         }
         if(c.compose(symmetry(y, x), s) != c.identity(tensor(x, y))) {
            throw Error(ErrorCode::SymmetryNotIso, "double swap is not the identity at " + at);
         }
      }
   }
   for(ObjId x = 0; x < no; ++x) {
      if(symmetry(unit_, x) != c.identity(x)) {
         throw Error(ErrorCode::SymmetryNotIso, "symmetry with the unit is not the identity at " + c.object_name(x));
      }
   }
   for(MorId f = 0; f < c.num_morphisms(); ++f) {
      for(MorId g = 0; g < c.num_morphisms(); ++g) {
         const MorId lhs = c.compose(symmetry(c.cod(f), c.cod(g)), tensor_mor(f, g));
         const MorId rhs = c.compose(tensor_mor(g, f), symmetry(c.dom(f), c.dom(g)));
         if(lhs != rhs) {
            throw Error(ErrorCode::NaturalityViolation,
                        "symmetry not natural at (" + c.morphism_name(f) + ", " + c.morphism_name(g) + ")");
         }
      }
   }
   for(ObjId x = 0; x < no; ++x) {
      for(ObjId y = 0; y < no; ++y) {
         for(ObjId z = 0; z < no; ++z) {
            const MorId lhs = symmetry(x, tensor(y, z));
            const MorId rhs = c.compose(tensor_mor(c.identity(y), symmetry(x, z)),
                                        tensor_mor(symmetry(x, y), c.identity(z)));
            if(lhs != rhs) {
               throw Error(ErrorCode::NaturalityViolation, "hexagon fails at (" + c.object_name(x) + ", " +
                                                              c.object_name(y) + ", " + c.object_name(z) + ")");
            }
         }
      }
   }
}

void MonoidalClosedStructure::check_closed() const {
   const FinCategory& c = base_;
   const std::size_t no = c.num_objects();
   for(ObjId x = 0; x < no; ++x) {
      for(ObjId y = 0; y < no; ++y) {
         for(ObjId z = 0; z < no; ++z) {
            const auto from = c.hom(tensor(x, y), z);
            const auto to = c.hom(x, hom(y, z));
            const std::string at = "(" + c.object_name(x) + ", " + c.object_name(y) + ", " + c.object_name(z) + ")";
            for(MorId h : from) {
               if(!curry_.contains({x, y, h})) {
                  throw Error(ErrorCode::CurryNotBijective, "no curry entry for " + c.morphism_name(h) + " at " + at);
               }
            }
            for(MorId k : to) {
               if(!uncurry_.contains({x, y, z, k})) {
                  throw Error(ErrorCode::CurryNotBijective, c.morphism_name(k) + " is not a curried map at " + at);
               }
            }
         }
      }
   }

   // Naturality, stated through evaluation so that every square is checked
   // directly against the tables.
   for(ObjId x = 0; x < no; ++x) {
      for(ObjId y = 0; y < no; ++y) {
         for(ObjId z = 0; z < no; ++z) {
            const std::string at = "(" + c.object_name(x) + ", " + c.object_name(y) + ", " + c.object_name(z) + ")";
            const ObjId yz = hom(y, z);
            const MorId ev = eval(y, z);
            for(MorId h : c.hom(tensor(x, y), z)) {
               const MorId ch = curry(x, y, h);
               for(ObjId x2 = 0; x2 < no; ++x2) {
                  for(MorId u : c.hom(x2, x)) {
                     if(curry(x2, y, c.compose(h, tensor_mor(u, c.identity(y)))) != c.compose(ch, u)) {
                        throw Error(ErrorCode::NaturalityViolation, "curry not natural in X at " + at + " along " +
                                                                       c.morphism_name(u));
                     }
                  }
               }
               for(ObjId z2 = 0; z2 < no; ++z2) {
                  for(MorId w : c.hom(z, z2)) {
                     const MorId post = curry(yz, y, c.compose(w, ev));
                     if(curry(x, y, c.compose(w, h)) != c.compose(post, ch)) {
                        throw Error(ErrorCode::NaturalityViolation, "curry not natural in Z at " + at + " along " +
                                                                       c.morphism_name(w));
                     }
                  }
               }
               for(ObjId y2 = 0; y2 < no; ++y2) {
                  for(MorId v : c.hom(y2, y)) {
                     const MorId pre = curry(yz, y2, c.compose(ev, tensor_mor(c.identity(yz), v)));
                     if(curry(x, y2, c.compose(h, tensor_mor(c.identity(x), v))) != c.compose(pre, ch)) {
                        throw Error(ErrorCode::NaturalityViolation, "curry not natural in Y at " + at + " along " +
                                                                       c.morphism_name(v));
                     }
                  }
               }
            }
         }
      }
   }
}

MorId MonoidalClosedStructure::curry(ObjId x, ObjId y, MorId h) const {
   auto it = curry_.find({x, y, h});
   if(it == curry_.end()) {
      throw Error(ErrorCode::DanglingID, "no curry entry for " + base_.morphism_name(h));
   }
   return it->second;
}

MorId MonoidalClosedStructure::uncurry(ObjId x, ObjId y, ObjId z, MorId k) const {
   auto it = uncurry_.find({x, y, z, k});
   if(it == uncurry_.end()) {
      throw Error(ErrorCode::DanglingID, "no uncurry entry for " + base_.morphism_name(k));
   }
   return it->second;
}

MorId MonoidalClosedStructure::eval(ObjId y, ObjId z) const {
   const ObjId yz = hom(y, z);
   return uncurry(yz, y, z, base_.identity(yz));
}

MorId MonoidalClosedStructure::apply_hom(MorId f, MorId g) const {
   const FinCategory& c = base_;
   if(f >= c.num_morphisms() || g >= c.num_morphisms()) {
      throw Error(ErrorCode::DanglingID, "apply_hom on unknown morphism");
   }
   const ObjId a2 = c.dom(f);
   const ObjId a = c.cod(f);
   const ObjId b = c.dom(g);
   const ObjId ab = hom(a, b);
   // g . ev . (id (x) f) : [A,B](x)A' -> B', curried over A'
   const MorId body = c.compose(g, c.compose(eval(a, b), tensor_mor(c.identity(ab), f)));
   return curry(ab, a2, body);
}

bool MonoidalClosedStructure::is_thin() const noexcept {
   for(ObjId x = 0; x < base_.num_objects(); ++x) {
      for(ObjId y = 0; y < base_.num_objects(); ++y) {
         if(base_.hom(x, y).size() > 1) {
            return false;
         }
      }
   }
   return true;
}

RawMonoidal MonoidalClosedStructure::to_raw() const {
   const FinCategory& c = base_;
   RawMonoidal raw;
   raw.category = c.to_raw();
   raw.unit = c.object_name(unit_);
   for(ObjId x = 0; x < c.num_objects(); ++x) {
      for(ObjId y = 0; y < c.num_objects(); ++y) {
         raw.tensor_obj.push_back({c.object_name(x), c.object_name(y), c.object_name(tensor(x, y))});
         raw.symmetry.push_back({c.object_name(x), c.object_name(y), c.morphism_name(symmetry(x, y))});
         raw.hom_obj.push_back({c.object_name(x), c.object_name(y), c.object_name(hom(x, y))});
      }
   }
   for(MorId f = 0; f < c.num_morphisms(); ++f) {
      for(MorId g = 0; g < c.num_morphisms(); ++g) {
         raw.tensor_mor.push_back({c.morphism_name(f), c.morphism_name(g), c.morphism_name(tensor_mor(f, g))});
      }
   }
   for(const auto& [key, k] : curry_) {
      const auto& [x, y, h] = key;
      raw.curry.push_back({c.object_name(x), c.object_name(y), c.object_name(c.cod(h)), c.morphism_name(h),
                           c.morphism_name(k)});
   }
   return raw;
}

// ---------------------------------------------------------------------------
// quantales

RawMonoidal quantale_tables(const QuantaleSpec& spec) {
   const std::size_t n = spec.carrier.size();
   std::map<std::string, std::size_t> index;
   for(std::size_t i = 0; i < n; ++i) {
      if(!index.emplace(spec.carrier[i], i).second) {
         throw Error(ErrorCode::DuplicateID, "carrier element " + spec.carrier[i]);
      }
   }
   auto at = [&](const std::string& x) {
      auto it = index.find(x);
      if(it == index.end()) {
         throw Error(ErrorCode::DanglingID, "unknown carrier element " + x);
      }
      return it->second;
   };

   std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
   for(std::size_t i = 0; i < n; ++i) le[i][i] = true;
   for(const auto& [x, y] : spec.order) le[at(x)][at(y)] = true;
   for(std::size_t k = 0; k < n; ++k)
      for(std::size_t i = 0; i < n; ++i)
         for(std::size_t j = 0; j < n; ++j)
            if(le[i][k] && le[k][j]) le[i][j] = true;
   for(std::size_t i = 0; i < n; ++i)
      for(std::size_t j = 0; j < n; ++j)
         if(i != j && le[i][j] && le[j][i])
            throw Error(ErrorCode::NotPartialOrder, spec.carrier[i] + " and " + spec.carrier[j] + " are equivalent");

   std::vector<std::size_t> t(n * n, no_id);
   for(const auto& [key, r] : spec.tensor) {
      t[at(key.first) * n + at(key.second)] = at(r);
   }
   for(std::size_t i = 0; i < n * n; ++i) {
      if(t[i] == no_id) {
         throw Error(ErrorCode::SchemaError,
                     "tensor table missing (" + spec.carrier[i / n] + ", " + spec.carrier[i % n] + ")");
      }
   }
   const std::size_t u = at(spec.unit);
   auto name = [&](std::size_t i) { return spec.carrier[i]; };
   auto ten = [&](std::size_t a, std::size_t b) { return t[a * n + b]; };

   for(std::size_t a = 0; a < n; ++a) {
      for(std::size_t b = 0; b < n; ++b) {
         if(ten(a, b) != ten(b, a)) {
            throw Error(ErrorCode::NotCommutative, name(a) + " (x) " + name(b));
         }
         for(std::size_t c = 0; c < n; ++c) {
            if(ten(ten(a, b), c) != ten(a, ten(b, c))) {
               throw Error(ErrorCode::NotAssociative, "(" + name(a) + ", " + name(b) + ", " + name(c) + ")");
            }
         }
      }
      if(ten(u, a) != a) {
         throw Error(ErrorCode::UnitViolation, name(u) + " (x) " + name(a) + " != " + name(a));
      }
   }
   for(std::size_t a = 0; a < n; ++a)
      for(std::size_t b = 0; b < n; ++b)
         for(std::size_t c = 0; c < n; ++c)
            if(le[a][b] && !le[ten(a, c)][ten(b, c)])
               throw Error(ErrorCode::NotMonotone, name(a) + " <= " + name(b) + " but not after tensoring with " + name(c));

   // residual [y, z] = max { w : w (x) y <= z }
   std::vector<std::size_t> res(n * n, no_id);
   for(std::size_t y = 0; y < n; ++y) {
      for(std::size_t z = 0; z < n; ++z) {
         std::vector<std::size_t> below;
         for(std::size_t w = 0; w < n; ++w)
            if(le[ten(w, y)][z]) below.push_back(w);
         for(std::size_t m : below) {
            if(std::all_of(below.begin(), below.end(), [&](std::size_t w) { return le[w][m]; })) {
               res[y * n + z] = m;
            }
         }
         if(res[y * n + z] == no_id) {
            throw Error(ErrorCode::NotResiduated, "no residual for (" + name(y) + ", " + name(z) + ")");
         }
      }
   }

   RawMonoidal raw;
   auto arrow = [&](std::size_t a, std::size_t b) { return thin_arrow(name(a), name(b)); };
   for(std::size_t a = 0; a < n; ++a) {
      raw.category.objects.push_back(name(a));
      raw.category.identities[name(a)] = arrow(a, a);
      for(std::size_t b = 0; b < n; ++b) {
         if(le[a][b]) raw.category.morphisms.push_back({arrow(a, b), name(a), name(b)});
      }
   }
   for(std::size_t a = 0; a < n; ++a)
      for(std::size_t b = 0; b < n; ++b)
         for(std::size_t c = 0; c < n; ++c)
            if(le[a][b] && le[b][c]) raw.category.compose.push_back({arrow(b, c), arrow(a, b), arrow(a, c)});

   raw.unit = name(u);
   for(std::size_t a = 0; a < n; ++a) {
      for(std::size_t b = 0; b < n; ++b) {
         raw.tensor_obj.push_back({name(a), name(b), name(ten(a, b))});
         raw.symmetry.push_back({name(a), name(b), arrow(ten(a, b), ten(a, b))});
         raw.hom_obj.push_back({name(a), name(b), name(res[a * n + b])});
      }
   }
   for(std::size_t a = 0; a < n; ++a)
      for(std::size_t b = 0; b < n; ++b)
         for(std::size_t c = 0; c < n; ++c)
            for(std::size_t d = 0; d < n; ++d)
               if(le[a][b] && le[c][d]) raw.tensor_mor.push_back({arrow(a, b), arrow(c, d), arrow(ten(a, c), ten(b, d))});
   for(std::size_t x = 0; x < n; ++x)
      for(std::size_t y = 0; y < n; ++y)
         for(std::size_t z = 0; z < n; ++z)
            if(le[ten(x, y)][z])
               raw.curry.push_back({name(x), name(y), name(z), arrow(ten(x, y), z), arrow(x, res[y * n + z])});
   return raw;
}

MonoidalClosedStructure quantale_to_V(const QuantaleSpec& spec) {
   return MonoidalClosedStructure::validate(quantale_tables(spec));
}

QuantaleSpec quantale_chain(std::size_t n, const std::string& tensor) {
   if(n == 0 || n > 10) {
      throw Error(ErrorCode::DirectiveError, "quantale_chain needs 1 <= n <= 10");
   }
   if(tensor != "min" && tensor != "lukasiewicz") {
      throw Error(ErrorCode::DirectiveError, "quantale_chain tensor must be min or lukasiewicz, got " + tensor);
   }
   QuantaleSpec spec;
   for(std::size_t i = 0; i < n; ++i) {
      spec.carrier.push_back(std::to_string(i));
      if(i + 1 < n) spec.order.emplace_back(std::to_string(i), std::to_string(i + 1));
   }
   const std::size_t top = n - 1;
   for(std::size_t i = 0; i < n; ++i) {
      for(std::size_t j = 0; j < n; ++j) {
         const std::size_t r = tensor == "min" ? std::min(i, j) : (i + j >= top ? i + j - top : 0);
         spec.tensor[{std::to_string(i), std::to_string(j)}] = std::to_string(r);
      }
   }
   spec.unit = std::to_string(top);
   return spec;
}

}  // namespace enrifact
