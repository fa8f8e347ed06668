#include "fonctex/fincat.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <random>
#include <set>

#include "fonctex/error.hpp"

namespace fonctex {

namespace {

constexpr uint64_t kSat = std::numeric_limits<uint64_t>::max();

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

uint64_t sat_add(uint64_t a, uint64_t b) { return a > kSat - b ? kSat : a + b; }

class MatrixCat final : public CatImpl {
 public:
  MatrixCat(FinRing ring, std::vector<size_t> ranks, std::string spec, const Caps& caps)
      : info_{ring, std::move(ranks)}, spec_(std::move(spec)) {
    const size_t n = info_.ranks.size();
    if (n == 0) throw ArgumentError("matrix category needs at least one object");
    std::set<size_t> seen(info_.ranks.begin(), info_.ranks.end());
    if (seen.size() != n) throw ArgumentError("matrix category ranks must be distinct");
    sizes_.resize(n * n);
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t) {
        const uint64_t h = hom_count(ring, info_.ranks[t], info_.ranks[s]);
        if (h > caps.hom_size)
          throw CapExceeded("hom-set A" + std::to_string(info_.ranks[s]) + " -> A" + std::to_string(info_.ranks[t]) +
                                " of " + spec_,
                            h, caps.hom_size);
        sizes_[s * n + t] = h;
      }
    for (size_t x = 0; x < n; ++x) ids_.push_back(RMat::identity(ring, info_.ranks[x]).index());

    uint64_t pairs = 0;
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y)
        for (size_t z = 0; z < n; ++z) pairs = sat_add(pairs, sat_mul(sizes_[x * n + y], sizes_[y * n + z]));
    if (pairs <= caps.composition_table_pairs) {
      table_.resize(n * n * n);
      for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
          for (size_t z = 0; z < n; ++z) {
            const uint64_t nf = sizes_[x * n + y], ng = sizes_[y * n + z];
            auto& t = table_[(x * n + y) * n + z];
            t.resize(nf * ng);
            for (uint64_t g = 0; g < ng; ++g)
              for (uint64_t f = 0; f < nf; ++f)
                t[g * nf + f] = static_cast<uint32_t>(compose_direct(static_cast<ObjId>(x), static_cast<ObjId>(y),
                                                                     static_cast<ObjId>(z), g, f));
          }
      has_table_ = true;
    }
  }

  size_t num_objects() const override { return info_.ranks.size(); }
  std::string object_name(ObjId x) const override { return "A" + std::to_string(info_.ranks.at(x)); }
  HomIdx hom_size(ObjId s, ObjId t) const override { return sizes_[s * num_objects() + t]; }
  HomIdx identity(ObjId x) const override { return ids_[x]; }
  std::string spec() const override { return spec_; }
  const MatrixCatInfo* matrix_info() const override { return &info_; }
  bool has_composition_table() const override { return has_table_; }

  HomIdx compose(ObjId x, ObjId y, ObjId z, HomIdx g, HomIdx f) const override {
    if (has_table_) {
      const size_t n = num_objects();
      return table_[(x * n + y) * n + z][g * sizes_[x * n + y] + f];
    }
    return compose_direct(x, y, z, g, f);
  }

 private:
  HomIdx compose_direct(ObjId x, ObjId y, ObjId z, HomIdx g, HomIdx f) const {
    const size_t rx = info_.ranks[x], ry = info_.ranks[y], rz = info_.ranks[z];
    const uint64_t m = info_.ring.modulus();
    std::array<uint32_t, 1024> sa, sb;
    std::vector<uint32_t> va, vb;
    uint32_t* a = sa.data();
    uint32_t* b = sb.data();
    if (ry * rx > sa.size() || rz * ry > sb.size()) {
      va.resize(ry * rx);
      vb.resize(rz * ry);
      a = va.data();
      b = vb.data();
    }
    for (size_t k = ry * rx; k-- > 0;) {
      a[k] = static_cast<uint32_t>(f % m);
      f /= m;
    }
    for (size_t k = rz * ry; k-- > 0;) {
      b[k] = static_cast<uint32_t>(g % m);
      g /= m;
    }
    uint64_t idx = 0;
    for (size_t i = 0; i < rz; ++i)
      for (size_t j = 0; j < rx; ++j) {
        uint64_t s = 0;
        for (size_t k = 0; k < ry; ++k) s += uint64_t{b[i * ry + k]} * a[k * rx + j];
        idx = idx * m + s % m;
      }
    return idx;
  }

  MatrixCatInfo info_;
  std::string spec_;
  std::vector<HomIdx> sizes_;
  std::vector<HomIdx> ids_;
  std::vector<std::vector<uint32_t>> table_;
  bool has_table_ = false;
};

class OppositeCat final : public CatImpl {
 public:
  explicit OppositeCat(FinCat base) : base_(std::move(base)) {}
  size_t num_objects() const override { return base_.num_objects(); }
  std::string object_name(ObjId x) const override { return base_.object_name(x); }
  HomIdx hom_size(ObjId s, ObjId t) const override { return base_.hom_size(t, s); }
  HomIdx compose(ObjId x, ObjId y, ObjId z, HomIdx g, HomIdx f) const override {
    return base_.impl().compose(z, y, x, f, g);
  }
  HomIdx identity(ObjId x) const override { return base_.impl().identity(x); }
  std::string spec() const override { return "op(" + base_.spec() + ")"; }
  bool has_composition_table() const override { return base_.has_composition_table(); }
  const FinCat& base() const { return base_; }

 private:
  FinCat base_;
};

class ProductCat final : public CatImpl {
 public:
  ProductCat(FinCat c, FinCat d) : c_(std::move(c)), d_(std::move(d)) {}
  size_t num_objects() const override { return c_.num_objects() * d_.num_objects(); }
  std::string object_name(ObjId x) const override {
    return "(" + c_.object_name(first(x)) + "," + d_.object_name(second(x)) + ")";
  }
  HomIdx hom_size(ObjId s, ObjId t) const override {
    return sat_mul(c_.hom_size(first(s), first(t)), d_.hom_size(second(s), second(t)));
  }
  HomIdx compose(ObjId x, ObjId y, ObjId z, HomIdx g, HomIdx f) const override {
    const HomIdx nf = d_.hom_size(second(x), second(y));
    const HomIdx ng = d_.hom_size(second(y), second(z));
    const HomIdx nh = d_.hom_size(second(x), second(z));
    const HomIdx hc = c_.impl().compose(first(x), first(y), first(z), g / ng, f / nf);
    const HomIdx hd = d_.impl().compose(second(x), second(y), second(z), g % ng, f % nf);
    return hc * nh + hd;
  }
  HomIdx identity(ObjId x) const override {
    return c_.impl().identity(first(x)) * d_.hom_size(second(x), second(x)) + d_.impl().identity(second(x));
  }
  std::string spec() const override { return "(" + c_.spec() + ")x(" + d_.spec() + ")"; }
  bool has_composition_table() const override { return c_.has_composition_table() && d_.has_composition_table(); }

 private:
  ObjId first(ObjId x) const { return static_cast<ObjId>(x / d_.num_objects()); }
  ObjId second(ObjId x) const { return static_cast<ObjId>(x % d_.num_objects()); }
  FinCat c_;
  FinCat d_;
};

class SubCat final : public CatImpl {
 public:
  SubCat(FinCat base, std::vector<ObjId> objs, std::string spec)
      : base_(std::move(base)), objs_(std::move(objs)), spec_(std::move(spec)) {}
  size_t num_objects() const override { return objs_.size(); }
  std::string object_name(ObjId x) const override { return base_.object_name(objs_[x]); }
  HomIdx hom_size(ObjId s, ObjId t) const override { return base_.hom_size(objs_[s], objs_[t]); }
  HomIdx compose(ObjId x, ObjId y, ObjId z, HomIdx g, HomIdx f) const override {
    return base_.impl().compose(objs_[x], objs_[y], objs_[z], g, f);
  }
  HomIdx identity(ObjId x) const override { return base_.impl().identity(objs_[x]); }
  std::string spec() const override { return spec_; }
  bool has_composition_table() const override { return base_.has_composition_table(); }

 private:
  FinCat base_;
  std::vector<ObjId> objs_;
  std::string spec_;
};

class ExplicitCat final : public CatImpl {
 public:
  using ComposeFn = std::function<HomIdx(ObjId, ObjId, ObjId, HomIdx, HomIdx)>;
  ExplicitCat(std::vector<std::string> names, std::vector<std::vector<HomIdx>> sizes, std::vector<HomIdx> ids,
              ComposeFn compose, std::string spec)
      : names_(std::move(names)), sizes_(std::move(sizes)), ids_(std::move(ids)), compose_(std::move(compose)),
        spec_(std::move(spec)) {}
  size_t num_objects() const override { return names_.size(); }
  std::string object_name(ObjId x) const override { return names_[x]; }
  HomIdx hom_size(ObjId s, ObjId t) const override { return sizes_[s][t]; }
  HomIdx compose(ObjId x, ObjId y, ObjId z, HomIdx g, HomIdx f) const override { return compose_(x, y, z, g, f); }
  HomIdx identity(ObjId x) const override { return ids_[x]; }
  std::string spec() const override { return spec_; }
  bool has_composition_table() const override { return true; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<HomIdx>> sizes_;
  std::vector<HomIdx> ids_;
  ComposeFn compose_;
  std::string spec_;
};

template <class Rng>
HomIdx random_index(Rng& rng, HomIdx n) {
  return std::uniform_int_distribution<HomIdx>(0, n - 1)(rng);
}

}  // namespace

// ---------------------------------------------------------------- FinCat

std::optional<ObjId> FinCat::find_object(std::string_view name) const {
  for (ObjId x = 0; x < num_objects(); ++x)
    if (object_name(x) == name) return x;
  return std::nullopt;
}

ObjId FinCat::object(std::string_view name) const {
  if (auto x = find_object(name)) return *x;
  throw ArgumentError("unknown object '" + std::string(name) + "' in " + spec());
}

Mor FinCat::compose(const Mor& g, const Mor& f) const {
  if (f.dst != g.src) throw ArgumentError("compose: morphisms are not composable");
  return Mor{f.src, g.dst, impl_->compose(f.src, f.dst, g.dst, g.idx, f.idx)};
}

std::string FinCat::describe(const Mor& f) const {
  std::string s = object_name(f.src) + "->" + object_name(f.dst) + "#" + std::to_string(f.idx);
  if (is_matrix()) s += payload(f).to_string();
  return s;
}

uint64_t FinCat::total_morphisms() const {
  uint64_t t = 0;
  for (ObjId s = 0; s < num_objects(); ++s)
    for (ObjId u = 0; u < num_objects(); ++u) t = sat_add(t, hom_size(s, u));
  return t;
}

uint64_t FinCat::composable_pairs() const {
  uint64_t t = 0;
  const ObjId n = static_cast<ObjId>(num_objects());
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z) t = sat_add(t, sat_mul(hom_size(x, y), hom_size(y, z)));
  return t;
}

std::vector<Mor> FinCat::homs(ObjId s, ObjId t, uint64_t cap) const {
  const HomIdx n = hom_size(s, t);
  if (n > cap) throw CapExceeded("enumerating Hom(" + object_name(s) + "," + object_name(t) + ")", n, cap);
  std::vector<Mor> out;
  out.reserve(n);
  for (HomIdx i = 0; i < n; ++i) out.push_back(Mor{s, t, i});
  return out;
}

const MatrixCatInfo& FinCat::matrix() const {
  const MatrixCatInfo* info = impl_->matrix_info();
  if (!info) throw ArgumentError(spec() + " is not a matrix category");
  return *info;
}

RMat FinCat::payload(const Mor& f) const {
  const MatrixCatInfo& info = matrix();
  return RMat::from_index(info.ring, info.ranks[f.dst], info.ranks[f.src], f.idx);
}

Mor FinCat::morphism(ObjId s, ObjId t, const RMat& m) const {
  const MatrixCatInfo& info = matrix();
  if (!(m.ring() == info.ring) || m.rows() != info.ranks[t] || m.cols() != info.ranks[s])
    throw ArgumentError("matrix " + m.to_string() + " is not a morphism " + object_name(s) + " -> " + object_name(t));
  return Mor{s, t, m.index()};
}

std::optional<ObjId> FinCat::object_of_rank(size_t r) const {
  const MatrixCatInfo& info = matrix();
  for (ObjId x = 0; x < info.ranks.size(); ++x)
    if (info.ranks[x] == r) return x;
  return std::nullopt;
}

// ---------------------------------------------------------------- CatFunctor

CatFunctor::CatFunctor(FinCat source, FinCat target, std::vector<ObjId> objects, MorMap morphisms, std::string name)
    : source_(std::move(source)), target_(std::move(target)), objects_(std::move(objects)),
      map_(std::move(morphisms)), name_(std::move(name)) {
  if (objects_.size() != source_.num_objects()) throw ArgumentError("CatFunctor: object map has wrong length");
  for (ObjId y : objects_)
    if (y >= target_.num_objects()) throw ArgumentError("CatFunctor: object map leaves the target");
}

CatFunctor identity_functor(const FinCat& c) {
  std::vector<ObjId> objs(c.num_objects());
  for (ObjId x = 0; x < objs.size(); ++x) objs[x] = x;
  return CatFunctor(c, c, std::move(objs), [](const Mor& f) { return f.idx; }, "id");
}

CatFunctor compose(const CatFunctor& g, const CatFunctor& f) {
  if (!f.target().same_as(g.source())) throw ArgumentError("compose: functors are not composable");
  std::vector<ObjId> objs(f.source().num_objects());
  for (ObjId x = 0; x < objs.size(); ++x) objs[x] = g.on_object(f.on_object(x));
  return CatFunctor(f.source(), g.target(), std::move(objs),
                    [f, g](const Mor& m) { return g.on_morphism(f.on_morphism(m)).idx; }, g.name() + "*" + f.name());
}

// ---------------------------------------------------------------- validation

ValidationReport validate_category(const FinCat& c, uint64_t seed, const Caps& caps) {
  ValidationReport rep;
  const ObjId n = static_cast<ObjId>(c.num_objects());
  const uint64_t total = c.total_morphisms();
  rep.exhaustive = total <= caps.exhaustive_morphisms;
  rep.policy = rep.exhaustive ? "exhaustive (morphisms " + std::to_string(total) + " <= " +
                                    std::to_string(caps.exhaustive_morphisms) + ")"
                              : "sampled " + std::to_string(caps.sampled_checks) + " triples (morphisms " +
                                    std::to_string(total) + ")";
  auto fail = [&](const std::string& what) {
    rep.ok = false;
    rep.failure = what;
    return rep;
  };
  auto check_identity = [&](const Mor& f) {
    ++rep.checks;
    return c.compose(c.id(f.dst), f) == f && c.compose(f, c.id(f.src)) == f;
  };
  auto check_assoc = [&](const Mor& f, const Mor& g, const Mor& h) {
    ++rep.checks;
    return c.compose(h, c.compose(g, f)) == c.compose(c.compose(h, g), f);
  };

  if (rep.exhaustive) {
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y)
        for (HomIdx i = 0; i < c.hom_size(x, y); ++i)
          if (!check_identity(Mor{x, y, i})) return fail("identity law fails at " + c.describe(Mor{x, y, i}));
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y)
        for (ObjId z = 0; z < n; ++z)
          for (ObjId w = 0; w < n; ++w)
            for (HomIdx i = 0; i < c.hom_size(x, y); ++i)
              for (HomIdx j = 0; j < c.hom_size(y, z); ++j)
                for (HomIdx k = 0; k < c.hom_size(z, w); ++k)
                  if (!check_assoc(Mor{x, y, i}, Mor{y, z, j}, Mor{z, w, k}))
                    return fail("associativity fails at " + c.describe(Mor{x, y, i}));
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<ObjId> obj(0, n - 1);
  for (uint64_t s = 0; s < caps.sampled_checks; ++s) {
    const ObjId x = obj(rng), y = obj(rng), z = obj(rng), w = obj(rng);
    if (c.hom_size(x, y) == 0 || c.hom_size(y, z) == 0 || c.hom_size(z, w) == 0) continue;
    const Mor f{x, y, random_index(rng, c.hom_size(x, y))};
    const Mor g{y, z, random_index(rng, c.hom_size(y, z))};
    const Mor h{z, w, random_index(rng, c.hom_size(z, w))};
    if (!check_identity(f)) return fail("identity law fails at " + c.describe(f));
    if (!check_assoc(f, g, h)) return fail("associativity fails at " + c.describe(f));
  }
  return rep;
}

ValidationReport validate_functor(const CatFunctor& fun, uint64_t seed, const Caps& caps) {
  ValidationReport rep;
  const FinCat& c = fun.source();
  const FinCat& d = fun.target();
  const ObjId n = static_cast<ObjId>(c.num_objects());
  auto fail = [&](const std::string& what) {
    rep.ok = false;
    rep.failure = what;
    return rep;
  };
  for (ObjId x = 0; x < n; ++x) {
    ++rep.checks;
    if (!(fun.on_morphism(c.id(x)) == d.id(fun.on_object(x)))) return fail("identity not preserved at " + c.object_name(x));
  }
  auto check = [&](const Mor& f, const Mor& g) {
    ++rep.checks;
    return fun.on_morphism(c.compose(g, f)) == d.compose(fun.on_morphism(g), fun.on_morphism(f));
  };
  const uint64_t pairs = c.composable_pairs();
  rep.exhaustive = pairs <= caps.exhaustive_pairs;
  rep.policy = rep.exhaustive ? "exhaustive (pairs " + std::to_string(pairs) + ")"
                              : "sampled " + std::to_string(caps.sampled_checks) + " pairs";
  if (rep.exhaustive) {
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y)
        for (ObjId z = 0; z < n; ++z)
          for (HomIdx i = 0; i < c.hom_size(x, y); ++i)
            for (HomIdx j = 0; j < c.hom_size(y, z); ++j)
              if (!check(Mor{x, y, i}, Mor{y, z, j})) return fail("composition not preserved at " + c.describe(Mor{x, y, i}));
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<ObjId> obj(0, n - 1);
  for (uint64_t s = 0; s < caps.sampled_checks; ++s) {
    const ObjId x = obj(rng), y = obj(rng), z = obj(rng);
    if (c.hom_size(x, y) == 0 || c.hom_size(y, z) == 0) continue;
    const Mor f{x, y, random_index(rng, c.hom_size(x, y))};
    const Mor g{y, z, random_index(rng, c.hom_size(y, z))};
    if (!check(f, g)) return fail("composition not preserved at " + c.describe(f));
  }
  return rep;
}

// ---------------------------------------------------------------- builders

FinCat matrix_category(const FinRing& ring, std::vector<size_t> ranks, std::string spec, const Caps& caps) {
  return FinCat(std::make_shared<MatrixCat>(ring, std::move(ranks), std::move(spec), caps));
}

FinCat truncated_additive(const FinRing& ring, size_t n, const Caps& caps) {
  std::vector<size_t> ranks(n + 1);
  for (size_t i = 0; i <= n; ++i) ranks[i] = i;
  return matrix_category(ring, std::move(ranks), "PN(" + ring.spec() + "," + std::to_string(n) + ")", caps);
}

FinCat monoid_category(const FinRing& ring, size_t n, const Caps& caps) {
  return matrix_category(ring, {n}, "M(" + ring.spec() + "," + std::to_string(n) + ")", caps);
}

SubcategoryData full_subcategory(const FinCat& c, std::vector<ObjId> objects, const Caps& caps) {
  if (objects.empty()) throw ArgumentError("full_subcategory: empty object set");
  std::set<ObjId> seen;
  std::string names;
  for (ObjId x : objects) {
    if (x >= c.num_objects()) throw ArgumentError("full_subcategory: unknown object " + std::to_string(x));
    if (!seen.insert(x).second) throw ArgumentError("full_subcategory: repeated object");
    names += (names.empty() ? "" : ",") + c.object_name(x);
  }
  bool everything = objects.size() == c.num_objects();
  for (ObjId i = 0; everything && i < objects.size(); ++i) everything = objects[i] == i;
  if (everything) return SubcategoryData{c, identity_functor(c), objects};

  const std::string spec = c.spec() + "|{" + names + "}";
  FinCat sub;
  if (c.is_matrix()) {
    std::vector<size_t> ranks;
    for (ObjId x : objects) ranks.push_back(c.matrix().ranks[x]);
    sub = matrix_category(c.matrix().ring, std::move(ranks), spec, caps);
  } else {
    sub = FinCat(std::make_shared<SubCat>(c, objects, spec));
  }
  CatFunctor inc(sub, c, objects, [](const Mor& f) { return f.idx; }, "incl");
  return SubcategoryData{sub, std::move(inc), std::move(objects)};
}

FinCat opposite(const FinCat& c) {
  if (auto* op = dynamic_cast<const OppositeCat*>(&c.impl())) return op->base();
  return FinCat(std::make_shared<OppositeCat>(c));
}

ProductData product(const FinCat& c, const FinCat& d) {
  ProductData pd;
  pd.cat = FinCat(std::make_shared<ProductCat>(c, d));
  pd.n2 = d.num_objects();
  const size_t n = pd.cat.num_objects();
  std::vector<ObjId> o1(n), o2(n);
  for (ObjId x = 0; x < n; ++x) {
    o1[x] = static_cast<ObjId>(x / pd.n2);
    o2[x] = static_cast<ObjId>(x % pd.n2);
  }
  const size_t n2 = pd.n2;
  pd.pr1 = CatFunctor(pd.cat, c, o1,
                      [d, n2](const Mor& h) {
                        return h.idx / d.hom_size(static_cast<ObjId>(h.src % n2), static_cast<ObjId>(h.dst % n2));
                      },
                      "pr1");
  pd.pr2 = CatFunctor(pd.cat, d, o2,
                      [d, n2](const Mor& h) {
                        return h.idx % d.hom_size(static_cast<ObjId>(h.src % n2), static_cast<ObjId>(h.dst % n2));
                      },
                      "pr2");
  return pd;
}

Mor product_morphism(const ProductData& p, const Mor& f, const Mor& g) {
  const FinCat& d = p.pr2.target();
  return Mor{p.object(f.src, g.src), p.object(f.dst, g.dst), f.idx * d.hom_size(g.src, g.dst) + g.idx};
}

std::pair<Mor, Mor> split_product_morphism(const ProductData& p, const Mor& h) {
  return {p.pr1.on_morphism(h), p.pr2.on_morphism(h)};
}

CatFunctor diagonal(const FinCat& c, const ProductData& cc) {
  if (!cc.pr1.target().same_as(c) || !cc.pr2.target().same_as(c)) throw ArgumentError("diagonal: product is not C x C");
  std::vector<ObjId> objs(c.num_objects());
  for (ObjId x = 0; x < objs.size(); ++x) objs[x] = cc.object(x, x);
  return CatFunctor(c, cc.cat, std::move(objs), [cc](const Mor& f) { return product_morphism(cc, f, f).idx; },
                    "diag");
}

FinCat terminal_category() {
  return explicit_category({"*"}, {{1}}, {0}, [](ObjId, ObjId, ObjId, HomIdx, HomIdx) { return HomIdx{0}; }, "1");
}

FinCat explicit_category(std::vector<std::string> names, std::vector<std::vector<HomIdx>> hom_sizes,
                         std::vector<HomIdx> identities,
                         std::function<HomIdx(ObjId, ObjId, ObjId, HomIdx, HomIdx)> compose, std::string spec) {
  const size_t n = names.size();
  if (hom_sizes.size() != n || identities.size() != n) throw ArgumentError("explicit_category: inconsistent sizes");
  return FinCat(std::make_shared<ExplicitCat>(std::move(names), std::move(hom_sizes), std::move(identities),
                                              std::move(compose), std::move(spec)));
}

CatFunctor reduction_functor(const FinRing& ring, uint32_t x, size_t n, const Caps& caps) {
  const uint32_t g = static_cast<uint32_t>(gcd_u64(x % ring.modulus(), ring.modulus()));
  if (g == 1) throw ArgumentError("reduction_functor: " + std::to_string(x) + " is a unit in " + ring.spec());
  const FinRing target_ring(g);
  FinCat src = truncated_additive(ring, n, caps);
  FinCat dst = truncated_additive(target_ring, n, caps);
  std::vector<ObjId> objs(n + 1);
  for (ObjId i = 0; i <= n; ++i) objs[i] = i;
  return CatFunctor(src, dst, std::move(objs),
                    [src, target_ring](const Mor& f) { return src.payload(f).reduced(target_ring).index(); },
                    "mod " + std::to_string(x));
}

// ---------------------------------------------------------------- biproducts

std::optional<Biproduct> biproduct(const FinCat& c, ObjId a, ObjId b) {
  const MatrixCatInfo& info = c.matrix();
  const size_t ra = info.ranks[a], rb = info.ranks[b];
  auto sum = c.object_of_rank(ra + rb);
  if (!sum) return std::nullopt;
  const FinRing& ring = info.ring;
  RMat i1(ring, ra + rb, ra), i2(ring, ra + rb, rb), p1(ring, ra, ra + rb), p2(ring, rb, ra + rb);
  for (size_t k = 0; k < ra; ++k) {
    i1.set(k, k, 1);
    p1.set(k, k, 1);
  }
  for (size_t k = 0; k < rb; ++k) {
    i2.set(ra + k, k, 1);
    p2.set(k, ra + k, 1);
  }
  Biproduct bp;
  bp.left = a;
  bp.right = b;
  bp.sum = *sum;
  bp.inc1 = c.morphism(a, *sum, i1);
  bp.inc2 = c.morphism(b, *sum, i2);
  bp.pr1 = c.morphism(*sum, a, p1);
  bp.pr2 = c.morphism(*sum, b, p2);
  return bp;
}

std::vector<Biproduct> all_biproducts(const FinCat& c) {
  std::vector<Biproduct> out;
  for (ObjId a = 0; a < c.num_objects(); ++a)
    for (ObjId b = 0; b < c.num_objects(); ++b)
      if (auto bp = biproduct(c, a, b)) out.push_back(*bp);
  return out;
}

std::optional<Mor> direct_sum(const FinCat& c, const Mor& f, const Mor& g) {
  const MatrixCatInfo& info = c.matrix();
  auto s = c.object_of_rank(info.ranks[f.src] + info.ranks[g.src]);
  auto t = c.object_of_rank(info.ranks[f.dst] + info.ranks[g.dst]);
  if (!s || !t) return std::nullopt;
  return c.morphism(*s, *t, block_diag(c.payload(f), c.payload(g)));
}

Mor add_morphisms(const FinCat& c, const Mor& f, const Mor& g) {
  if (f.src != g.src || f.dst != g.dst) throw ArgumentError("add_morphisms: different hom-sets");
  return c.morphism(f.src, f.dst, mat_add(c.payload(f), c.payload(g)));
}

// ---------------------------------------------------------------- parsing

FinCat parse_category(std::string_view spec, const Caps& caps) {
  auto bad = [&]() { return UsageError("bad category spec '" + std::string(spec) + "' (expected PN(Z/m,N) or M(Z/m,n))"); };
  std::string_view body;
  bool monoid = false;
  if (spec.substr(0, 3) == "PN(") {
    body = spec.substr(3);
  } else if (spec.substr(0, 2) == "M(") {
    body = spec.substr(2);
    monoid = true;
  } else {
    throw bad();
  }
  if (body.empty() || body.back() != ')') throw bad();
  body.remove_suffix(1);
  const size_t comma = body.find(',');
  if (comma == std::string_view::npos) throw bad();
  const FinRing ring = FinRing::parse(body.substr(0, comma));
  auto num = body.substr(comma + 1);
  size_t n = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
  if (ec != std::errc() || ptr != num.data() + num.size()) throw bad();
  return monoid ? monoid_category(ring, n, caps) : truncated_additive(ring, n, caps);
}

}  // namespace fonctex
