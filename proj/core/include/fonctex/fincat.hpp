#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fonctex/caps.hpp"
#include "fonctex/ring.hpp"

namespace fonctex {

using ObjId = uint32_t;
using HomIdx = uint64_t;

/// A morphism src -> dst, identified by its index in the canonical hom list.
struct Mor {
  ObjId src = 0;
  ObjId dst = 0;
  HomIdx idx = 0;
  friend auto operator<=>(const Mor&, const Mor&) = default;
};

/// Extra data carried by categories whose morphisms are matrices over Z/m:
/// object x is the free module of rank ranks[x], Hom(x, y) the ranks[y] x ranks[x] matrices.
struct MatrixCatInfo {
  FinRing ring;
  std::vector<size_t> ranks;
};

class CatImpl {
 public:
  virtual ~CatImpl() = default;
  virtual size_t num_objects() const = 0;
  virtual std::string object_name(ObjId x) const = 0;
  virtual HomIdx hom_size(ObjId s, ObjId t) const = 0;
  // g o f for f: x -> y, g: y -> z.
  virtual HomIdx compose(ObjId x, ObjId y, ObjId z, HomIdx g, HomIdx f) const = 0;
  virtual HomIdx identity(ObjId x) const = 0;
  virtual std::string spec() const = 0;
  virtual const MatrixCatInfo* matrix_info() const { return nullptr; }
  virtual bool has_composition_table() const { return false; }
};

/// A finite category. Cheap to copy; the data is shared and immutable.
class FinCat {
 public:
  FinCat() = default;
  explicit FinCat(std::shared_ptr<const CatImpl> impl) : impl_(std::move(impl)) {}

  size_t num_objects() const { return impl_->num_objects(); }
  std::string object_name(ObjId x) const { return impl_->object_name(x); }
  std::optional<ObjId> find_object(std::string_view name) const;
  ObjId object(std::string_view name) const;  // throws on unknown name
  HomIdx hom_size(ObjId s, ObjId t) const { return impl_->hom_size(s, t); }
  Mor compose(const Mor& g, const Mor& f) const;
  Mor id(ObjId x) const { return Mor{x, x, impl_->identity(x)}; }
  std::string spec() const { return impl_->spec(); }
  std::string describe(const Mor& f) const;

  uint64_t total_morphisms() const;  // saturating
  uint64_t composable_pairs() const;  // saturating
  std::vector<Mor> homs(ObjId s, ObjId t, uint64_t cap = default_caps().enumeration) const;
  bool has_composition_table() const { return impl_->has_composition_table(); }

  bool is_matrix() const { return impl_->matrix_info() != nullptr; }
  const MatrixCatInfo& matrix() const;
  RMat payload(const Mor& f) const;
  Mor morphism(ObjId s, ObjId t, const RMat& m) const;
  std::optional<ObjId> object_of_rank(size_t r) const;
  size_t rank_of(ObjId x) const { return matrix().ranks[x]; }

  bool same_as(const FinCat& o) const { return impl_ == o.impl_ || spec() == o.spec(); }
  const CatImpl& impl() const { return *impl_; }
  const std::shared_ptr<const CatImpl>& impl_ptr() const { return impl_; }
  explicit operator bool() const { return impl_ != nullptr; }

 private:
  std::shared_ptr<const CatImpl> impl_;
};

/// A functor between finite categories, as an object map and a morphism rule.
class CatFunctor {
 public:
  using MorMap = std::function<HomIdx(const Mor&)>;
  CatFunctor() = default;
  CatFunctor(FinCat source, FinCat target, std::vector<ObjId> objects, MorMap morphisms, std::string name);

  const FinCat& source() const { return source_; }
  const FinCat& target() const { return target_; }
  ObjId on_object(ObjId x) const { return objects_[x]; }
  Mor on_morphism(const Mor& f) const { return Mor{objects_[f.src], objects_[f.dst], map_(f)}; }
  const std::string& name() const { return name_; }

 private:
  FinCat source_;
  FinCat target_;
  std::vector<ObjId> objects_;
  MorMap map_;
  std::string name_;
};

CatFunctor identity_functor(const FinCat& c);
CatFunctor compose(const CatFunctor& g, const CatFunctor& f);

struct ValidationReport {
  bool ok = true;
  bool exhaustive = true;
  uint64_t checks = 0;
  std::string policy;
  std::string failure;
};

ValidationReport validate_category(const FinCat& c, uint64_t seed = 1, const Caps& caps = default_caps());
ValidationReport validate_functor(const CatFunctor& f, uint64_t seed = 1, const Caps& caps = default_caps());

// ---- builders

// Objects A^0..A^N ("A0".."AN"); spec "PN(Z/m,N)".
FinCat truncated_additive(const FinRing& ring, size_t n, const Caps& caps = default_caps());
// One object A^n with End = M_n(ring); spec "M(Z/m,n)".
FinCat monoid_category(const FinRing& ring, size_t n, const Caps& caps = default_caps());
// Objects are free modules of the listed ranks (distinct, increasing).
FinCat matrix_category(const FinRing& ring, std::vector<size_t> ranks, std::string spec,
                       const Caps& caps = default_caps());

struct SubcategoryData {
  FinCat cat;
  CatFunctor inclusion;
  std::vector<ObjId> objects;  // ambient ids, in subcategory order
};
SubcategoryData full_subcategory(const FinCat& c, std::vector<ObjId> objects, const Caps& caps = default_caps());

FinCat opposite(const FinCat& c);

struct ProductData {
  FinCat cat;
  CatFunctor pr1;
  CatFunctor pr2;
  ObjId object(ObjId a, ObjId b) const { return a * static_cast<ObjId>(n2) + b; }
  size_t n2 = 0;
};
// Object (a,b) has id a * |Ob D| + b; morphism (f,g) has index f.idx * |D(b,b')| + g.idx.
ProductData product(const FinCat& c, const FinCat& d);
Mor product_morphism(const ProductData& p, const Mor& f, const Mor& g);
std::pair<Mor, Mor> split_product_morphism(const ProductData& p, const Mor& h);
CatFunctor diagonal(const FinCat& c, const ProductData& cc);

FinCat terminal_category();
// Small explicit category: compose[x][y][z][g * |C(x,y)| + f].
FinCat explicit_category(std::vector<std::string> names, std::vector<std::vector<HomIdx>> hom_sizes,
                         std::vector<HomIdx> identities,
                         std::function<HomIdx(ObjId, ObjId, ObjId, HomIdx, HomIdx)> compose, std::string spec);

// P_N(Z/m) -> P_N(Z/gcd(x,m)), entrywise reduction. x = 0 gives an isomorphism.
CatFunctor reduction_functor(const FinRing& ring, uint32_t x, size_t n, const Caps& caps = default_caps());

// ---- biproducts in matrix categories

struct Biproduct {
  ObjId left = 0, right = 0, sum = 0;
  Mor inc1, inc2, pr1, pr2;
};
std::optional<Biproduct> biproduct(const FinCat& c, ObjId a, ObjId b);
std::vector<Biproduct> all_biproducts(const FinCat& c);
// f (+) g : a (+) b -> a' (+) b', block diagonal; nullopt if a sum object is missing.
std::optional<Mor> direct_sum(const FinCat& c, const Mor& f, const Mor& g);
Mor add_morphisms(const FinCat& c, const Mor& f, const Mor& g);

// "PN(Z/2,3)", "M(Z/2,2)".
FinCat parse_category(std::string_view spec, const Caps& caps = default_caps());

}  // namespace fonctex
