#include "fonctex/funrep.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "detail/lazy.hpp"
#include "fonctex/error.hpp"

namespace fonctex {

using detail::for_each_nonzero;
using detail::LazyTable;

namespace {

void require_same(const FunRep& a, const FunRep& b, const char* what) {
  if (!a.cat().same_as(b.cat())) throw ArgumentError(std::string(what) + ": functors live on different categories");
  if (a.field() != b.field()) throw ArgumentError(std::string(what) + ": field mismatch");
}

uint64_t checked_product(uint64_t a, uint64_t b, const Caps& caps, const std::string& what) {
  if (a != 0 && b > caps.enumeration / a) throw CapExceeded(what, a * b, caps.enumeration);
  return a * b;
}

}  // namespace

// ---------------------------------------------------------------- FunRep

FunRep::FunRep(FinCat cat, uint32_t p, std::vector<size_t> dims, Action action, std::string label)
    : FunRep(std::move(cat), p, std::move(dims), std::move(action), nullptr, std::move(label)) {}

FunRep::FunRep(FinCat cat, uint32_t p, std::vector<size_t> dims, Action action, Apply apply, std::string label) {
  check_field(p);
  if (dims.size() != cat.num_objects()) throw ArgumentError("FunRep: one dimension per object required");
  auto impl = std::make_shared<Impl>();
  impl->cat = std::move(cat);
  impl->p = p;
  impl->dims = std::move(dims);
  impl->action = std::move(action);
  impl->apply = std::move(apply);
  impl->label = std::move(label);
  impl_ = std::move(impl);
}

FunRep FunRep::set_like(FinCat cat, uint32_t p, std::vector<size_t> dims, BasisMap map, std::string label) {
  FunRep f(std::move(cat), p, std::move(dims), nullptr, std::move(label));
  auto impl = std::make_shared<Impl>(*f.impl_);
  impl->basis = std::move(map);
  f.impl_ = std::move(impl);
  return f;
}

FunRep FunRep::from_table(FinCat cat, uint32_t p, std::vector<size_t> dims, std::map<Mor, FMat> table,
                          std::string label) {
  auto t = std::make_shared<const std::map<Mor, FMat>>(std::move(table));
  return FunRep(std::move(cat), p, std::move(dims),
                [t](const Mor& f) {
                  auto it = t->find(f);
                  if (it == t->end()) throw ArgumentError("FunRep table has no entry for a morphism");
                  return it->second;
                },
                std::move(label));
}

size_t FunRep::total_dim() const {
  size_t s = 0;
  for (size_t d : impl_->dims) s += d;
  return s;
}

bool FunRep::is_zero() const { return total_dim() == 0; }

FMat FunRep::act(const Mor& f) const {
  const size_t ds = dim(f.src), dt = dim(f.dst);
  if (impl_->basis) {
    FMat m(impl_->p, dt, ds);
    for (uint64_t b = 0; b < ds; ++b) m.set(impl_->basis(f, b), b, 1);
    return m;
  }
  FMat m = impl_->action(f);
  if (m.rows() != dt || m.cols() != ds)
    throw InvariantViolation("functor " + label() + ": action matrix has shape " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(dt) + "x" + std::to_string(ds));
  return m;
}

FVec FunRep::apply(const Mor& f, const FVec& v) const {
  if (v.size() != dim(f.src)) throw ArgumentError("FunRep::apply: vector does not live in F(source)");
  if (impl_->basis) {
    FVec out(impl_->p, dim(f.dst));
    for_each_nonzero(v, [&](size_t b, uint32_t c) { out.add_at(impl_->basis(f, b), c); });
    return out;
  }
  if (impl_->apply) return impl_->apply(f, v);
  return act(f).apply(v);
}

std::string FunRep::fingerprint() const {
  uint64_t h = detail::fnv1a(detail::kFnvOffset, cat().spec());
  h = detail::fnv1a(h, field());
  const FinCat& c = cat();
  for (size_t d : dims()) h = detail::fnv1a(h, d);
  for (ObjId x = 0; x < c.num_objects(); ++x)
    for (ObjId y = 0; y < c.num_objects(); ++y) {
      const HomIdx n = c.hom_size(x, y);
      if (n == 0 || dim(x) * dim(y) > 4096 || dim(x) * dim(y) == 0) continue;
      for (HomIdx idx : {HomIdx{0}, n / 2, n - 1}) {
        const FMat m = act(Mor{x, y, idx});
        for (size_t r = 0; r < m.rows(); ++r)
          for (size_t col = 0; col < m.cols(); ++col) h = detail::fnv1a(h, m.get(r, col));
      }
    }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FunRep FunRep::relabeled(std::string label) const {
  FunRep f = *this;
  auto impl = std::make_shared<Impl>(*impl_);
  impl->label = std::move(label);
  f.impl_ = std::move(impl);
  return f;
}

// ---------------------------------------------------------------- NatTrans

struct NatTrans::Impl {
  FunRep src, dst;
  bool eager = false;
  std::vector<FMat> comps;
  std::unique_ptr<std::once_flag[]> flags;
  Component make;
};

const FunRep& NatTrans::src() const { return impl_->src; }
const FunRep& NatTrans::dst() const { return impl_->dst; }

NatTrans::NatTrans(FunRep src, FunRep dst, std::vector<FMat> components) {
  require_same(src, dst, "NatTrans");
  if (components.size() != src.cat().num_objects()) throw ArgumentError("NatTrans: one component per object required");
  for (ObjId x = 0; x < components.size(); ++x)
    if (components[x].rows() != dst.dim(x) || components[x].cols() != src.dim(x))
      throw ArgumentError("NatTrans: component at " + src.cat().object_name(x) + " has the wrong shape");
  impl_ = std::make_shared<Impl>();
  impl_->src = std::move(src);
  impl_->dst = std::move(dst);
  impl_->eager = true;
  impl_->comps = std::move(components);
}

NatTrans::NatTrans(FunRep src, FunRep dst, Component component) {
  require_same(src, dst, "NatTrans");
  impl_ = std::make_shared<Impl>();
  const size_t n = src.cat().num_objects();
  impl_->src = std::move(src);
  impl_->dst = std::move(dst);
  impl_->comps.resize(n);
  impl_->flags = std::make_unique<std::once_flag[]>(n);
  impl_->make = std::move(component);
}

const FMat& NatTrans::at(ObjId x) const {
  if (impl_->eager) return impl_->comps[x];
  std::call_once(impl_->flags[x], [&] {
    FMat m = impl_->make(x);
    if (m.rows() != impl_->dst.dim(x) || m.cols() != impl_->src.dim(x))
      throw InvariantViolation("NatTrans: component at " + impl_->src.cat().object_name(x) + " has the wrong shape");
    impl_->comps[x] = std::move(m);
  });
  return impl_->comps[x];
}

// ---------------------------------------------------------------- validation

namespace {

template <class Check>
ValidationReport run_pairs(const FinCat& c, uint64_t seed, const Caps& caps, uint64_t weight, Check&& check) {
  ValidationReport rep;
  const ObjId n = static_cast<ObjId>(c.num_objects());
  const uint64_t pairs = c.composable_pairs();
  rep.exhaustive = pairs <= caps.exhaustive_pairs && pairs * std::max<uint64_t>(weight, 1) <= (uint64_t{1} << 26);
  rep.policy = rep.exhaustive ? "exhaustive (pairs " + std::to_string(pairs) + ")"
                              : "sampled " + std::to_string(caps.sampled_checks) + " pairs (of " + std::to_string(pairs) + ")";
  if (rep.exhaustive) {
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y)
        for (ObjId z = 0; z < n; ++z)
          for (HomIdx i = 0; i < c.hom_size(x, y); ++i)
            for (HomIdx j = 0; j < c.hom_size(y, z); ++j) {
              ++rep.checks;
              std::string err = check(Mor{x, y, i}, Mor{y, z, j});
              if (!err.empty()) {
                rep.ok = false;
                rep.failure = err;
                return rep;
              }
            }
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<ObjId> obj(0, n - 1);
  for (uint64_t s = 0; s < caps.sampled_checks; ++s) {
    const ObjId x = obj(rng), y = obj(rng), z = obj(rng);
    if (c.hom_size(x, y) == 0 || c.hom_size(y, z) == 0) continue;
    const Mor f{x, y, std::uniform_int_distribution<HomIdx>(0, c.hom_size(x, y) - 1)(rng)};
    const Mor g{y, z, std::uniform_int_distribution<HomIdx>(0, c.hom_size(y, z) - 1)(rng)};
    ++rep.checks;
    std::string err = check(f, g);
    if (!err.empty()) {
      rep.ok = false;
      rep.failure = err;
      return rep;
    }
  }
  return rep;
}

}  // namespace

ValidationReport validate_funrep(const FunRep& F, uint64_t seed, const Caps& caps) {
  const FinCat& c = F.cat();
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    const FMat m = F.act(c.id(x));
    if (!m.is_identity()) {
      ValidationReport rep;
      rep.ok = false;
      rep.failure = F.label() + ": F(id) is not the identity at " + c.object_name(x);
      return rep;
    }
  }
  size_t maxdim = 0;
  for (size_t d : F.dims()) maxdim = std::max(maxdim, d);
  if (F.is_set_like()) {
    std::mt19937_64 rng(seed ^ 0x5eedULL);
    return run_pairs(c, seed, caps, maxdim, [&](const Mor& f, const Mor& g) -> std::string {
      const size_t d = F.dim(f.src);
      const Mor gf = c.compose(g, f);
      auto one = [&](uint64_t b) { return F.basis_image(gf, b) == F.basis_image(g, F.basis_image(f, b)); };
      if (d <= 64) {
        for (uint64_t b = 0; b < d; ++b)
          if (!one(b)) return F.label() + ": composition not preserved at " + c.describe(f);
      } else {
        for (int k = 0; k < 8; ++k)
          if (!one(std::uniform_int_distribution<uint64_t>(0, d - 1)(rng)))
            return F.label() + ": composition not preserved at " + c.describe(f);
      }
      return {};
    });
  }
  return run_pairs(c, seed, caps, maxdim * maxdim, [&](const Mor& f, const Mor& g) -> std::string {
    if (!(F.act(c.compose(g, f)) == F.act(g) * F.act(f)))
      return F.label() + ": F(g o f) != F(g) F(f) at f = " + c.describe(f) + ", g = " + c.describe(g);
    return {};
  });
}

ValidationReport validate_nat(const NatTrans& eta, uint64_t seed, const Caps& caps) {
  ValidationReport rep;
  const FinCat& c = eta.src().cat();
  const ObjId n = static_cast<ObjId>(c.num_objects());
  const uint64_t total = c.total_morphisms();
  auto check = [&](const Mor& f) {
    ++rep.checks;
    if (eta.dst().act(f) * eta.at(f.src) == eta.at(f.dst) * eta.src().act(f)) return true;
    rep.ok = false;
    rep.failure = "naturality fails at " + c.describe(f);
    return false;
  };
  rep.exhaustive = total <= caps.exhaustive_pairs;
  rep.policy = rep.exhaustive ? "exhaustive (morphisms " + std::to_string(total) + ")"
                              : "sampled " + std::to_string(caps.sampled_checks) + " morphisms";
  if (rep.exhaustive) {
    for (ObjId x = 0; x < n; ++x)
      for (ObjId y = 0; y < n; ++y)
        for (HomIdx i = 0; i < c.hom_size(x, y); ++i)
          if (!check(Mor{x, y, i})) return rep;
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<ObjId> obj(0, n - 1);
  for (uint64_t s = 0; s < caps.sampled_checks; ++s) {
    const ObjId x = obj(rng), y = obj(rng);
    if (c.hom_size(x, y) == 0) continue;
    if (!check(Mor{x, y, std::uniform_int_distribution<HomIdx>(0, c.hom_size(x, y) - 1)(rng)})) return rep;
  }
  return rep;
}

ValidationReport validate_set_functor(const SetFunRep& rho, uint64_t seed, const Caps& caps) {
  const FinCat& c = rho.cat;
  for (ObjId x = 0; x < c.num_objects(); ++x)
    for (uint64_t b = 0; b < rho.sizes[x]; ++b)
      if (rho.map(c.id(x), b) != b) {
        ValidationReport rep;
        rep.ok = false;
        rep.failure = rho.label + ": identity not preserved at " + c.object_name(x);
        return rep;
      }
  return run_pairs(c, seed, caps, 1, [&](const Mor& f, const Mor& g) -> std::string {
    const Mor gf = c.compose(g, f);
    for (uint64_t b = 0; b < std::min<uint64_t>(rho.sizes[f.src], 64); ++b) {
      const uint64_t fb = rho.map(f, b);
      if (fb >= rho.sizes[f.dst]) return rho.label + ": element map leaves the target set";
      if (rho.map(gf, b) != rho.map(g, fb)) return rho.label + ": composition not preserved at " + c.describe(f);
    }
    return {};
  });
}

bool is_iso(const NatTrans& eta) {
  const FinCat& c = eta.src().cat();
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    const FMat& m = eta.at(x);
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  }
  return true;
}

std::map<Mor, FMat> tabulate(const FunRep& F, const Caps& caps) {
  const FinCat& c = F.cat();
  const uint64_t total = c.total_morphisms();
  if (total > caps.enumeration) throw CapExceeded("tabulating " + F.label(), total, caps.enumeration);
  std::map<Mor, FMat> t;
  for (ObjId x = 0; x < c.num_objects(); ++x)
    for (ObjId y = 0; y < c.num_objects(); ++y)
      for (HomIdx i = 0; i < c.hom_size(x, y); ++i) t.emplace(Mor{x, y, i}, F.act(Mor{x, y, i}));
  return t;
}

bool same_data(const FunRep& a, const FunRep& b, const Caps& caps) {
  if (!a.cat().same_as(b.cat()) || a.field() != b.field() || a.dims() != b.dims()) return false;
  const FinCat& c = a.cat();
  const uint64_t total = c.total_morphisms();
  if (total > caps.enumeration) throw CapExceeded("comparing functor data", total, caps.enumeration);
  for (ObjId x = 0; x < c.num_objects(); ++x)
    for (ObjId y = 0; y < c.num_objects(); ++y)
      for (HomIdx i = 0; i < c.hom_size(x, y); ++i)
        if (!(a.act(Mor{x, y, i}) == b.act(Mor{x, y, i}))) return false;
  return true;
}

// ---------------------------------------------------------------- NatTrans algebra

NatTrans identity_nat(const FunRep& f) {
  return NatTrans(f, f, [f](ObjId x) { return FMat::identity(f.field(), f.dim(x)); });
}

NatTrans zero_nat(const FunRep& src, const FunRep& dst) {
  return NatTrans(src, dst, [src, dst](ObjId x) { return FMat(src.field(), dst.dim(x), src.dim(x)); });
}

NatTrans compose(const NatTrans& b, const NatTrans& a) {
  if (!(a.dst().dims() == b.src().dims())) throw ArgumentError("compose: natural transformations are not composable");
  return NatTrans(a.src(), b.dst(), [a, b](ObjId x) { return b.at(x) * a.at(x); });
}

NatTrans inverse(const NatTrans& eta) {
  return NatTrans(eta.dst(), eta.src(), [eta](ObjId x) {
    auto inv = inverse(eta.at(x));
    if (!inv) throw ArgumentError("inverse: component at " + eta.src().cat().object_name(x) + " is singular");
    return *inv;
  });
}

NatTrans nat_sum(const NatTrans& a, const NatTrans& b) {
  return NatTrans(a.src(), a.dst(), [a, b](ObjId x) { return a.at(x) + b.at(x); });
}

NatTrans nat_scaled(const NatTrans& a, uint32_t c) {
  return NatTrans(a.src(), a.dst(), [a, c](ObjId x) { return a.at(x).scaled(c); });
}

// ---------------------------------------------------------------- basic functors

FunRep constant_functor(const FinCat& c, uint32_t p, size_t dim) {
  return FunRep::set_like(c, p, std::vector<size_t>(c.num_objects(), dim), [](const Mor&, uint64_t b) { return b; },
                          dim == 1 ? "const" : "const^" + std::to_string(dim));
}

FunRep zero_functor(const FinCat& c, uint32_t p) {
  return FunRep::set_like(c, p, std::vector<size_t>(c.num_objects(), 0), [](const Mor&, uint64_t b) { return b; },
                          "0");
}

SetFunRep hom_set_functor(const FinCat& c, ObjId t) {
  SetFunRep r;
  r.cat = c;
  for (ObjId u = 0; u < c.num_objects(); ++u) r.sizes.push_back(c.hom_size(t, u));
  r.map = [c, t](const Mor& f, uint64_t b) { return c.compose(f, Mor{t, f.src, b}).idx; };
  r.label = "C(" + c.object_name(t) + ",-)";
  return r;
}

SetFunRep set_product(const SetFunRep& a, const SetFunRep& b) {
  if (!a.cat.same_as(b.cat)) throw ArgumentError("set_product: different categories");
  SetFunRep r;
  r.cat = a.cat;
  for (size_t x = 0; x < a.sizes.size(); ++x) r.sizes.push_back(a.sizes[x] * b.sizes[x]);
  r.map = [a, b](const Mor& f, uint64_t e) {
    const uint64_t nb = b.sizes[f.src];
    return a.map(f, e / nb) * b.sizes[f.dst] + b.map(f, e % nb);
  };
  r.label = a.label + "x" + b.label;
  return r;
}

SetFunRep singleton_set_functor(const FinCat& c) {
  SetFunRep r;
  r.cat = c;
  r.sizes.assign(c.num_objects(), 1);
  r.map = [](const Mor&, uint64_t) { return uint64_t{0}; };
  r.label = "*";
  return r;
}

FunRep linearize(const SetFunRep& rho, uint32_t p) {
  std::vector<size_t> dims(rho.sizes.begin(), rho.sizes.end());
  return FunRep::set_like(rho.cat, p, std::move(dims), rho.map, "k[" + rho.label + "]");
}

FunRep standard_projective(const FinCat& c, ObjId t, uint32_t p, const Caps& caps) {
  if (t >= c.num_objects()) throw ArgumentError("standard_projective: unknown object");
  std::vector<size_t> dims;
  for (ObjId u = 0; u < c.num_objects(); ++u) {
    const HomIdx h = c.hom_size(t, u);
    if (h > caps.enumeration)
      throw CapExceeded("P(" + c.object_name(t) + ") at " + c.object_name(u), h, caps.enumeration);
    dims.push_back(h);
  }
  return FunRep::set_like(c, p, std::move(dims),
                          [c, t](const Mor& f, uint64_t b) { return c.compose(f, Mor{t, f.src, b}).idx; },
                          "P(" + c.object_name(t) + ")");
}

FunRep identity_functor_rep(const FinCat& c, uint32_t p) {
  const MatrixCatInfo& info = c.matrix();
  if (info.ring.modulus() % p != 0)
    throw ArgumentError("Id: F_" + std::to_string(p) + " is not a quotient of " + info.ring.spec());
  std::vector<size_t> dims(info.ranks.begin(), info.ranks.end());
  return FunRep(c, p, std::move(dims),
                [c, p](const Mor& f) {
                  const RMat m = c.payload(f);
                  FMat out(p, m.rows(), m.cols());
                  for (size_t r = 0; r < m.rows(); ++r)
                    for (size_t k = 0; k < m.cols(); ++k)
                      if (uint32_t v = m.at(r, k) % p) out.set(r, k, v);
                  return out;
                },
                "Id");
}

// ---------------------------------------------------------------- hom_space / Yoneda

std::vector<NatTrans> hom_space(const FunRep& F, const FunRep& G, const Caps& caps) {
  require_same(F, G, "hom_space");
  const FinCat& c = F.cat();
  const uint32_t p = F.field();
  const ObjId n = static_cast<ObjId>(c.num_objects());
  const uint64_t total = c.total_morphisms();
  if (total > caps.enumeration) throw CapExceeded("hom_space naturality system", total, caps.enumeration);
  std::vector<size_t> off(n + 1, 0);
  for (ObjId x = 0; x < n; ++x) off[x + 1] = off[x] + G.dim(x) * F.dim(x);
  const size_t unknowns = off[n];
  EchelonBasis eqs(p, unknowns);
  for (ObjId x = 0; x < n && eqs.dim() < unknowns; ++x)
    for (ObjId y = 0; y < n && eqs.dim() < unknowns; ++y) {
      const size_t fx = F.dim(x), fy = F.dim(y), gx = G.dim(x), gy = G.dim(y);
      if (gy * fx == 0) continue;
      for (HomIdx i = 0; i < c.hom_size(x, y) && eqs.dim() < unknowns; ++i) {
        const Mor f{x, y, i};
        if (x == y && i == c.id(x).idx) continue;
        const FMat Ff = F.act(f), Gf = G.act(f);
        // (G(f) eta_x - eta_y F(f))[r][col] = 0
        for (size_t r = 0; r < gy; ++r)
          for (size_t col = 0; col < fx; ++col) {
            FVec row(p, unknowns);
            for (size_t k = 0; k < gx; ++k)
              if (uint32_t a = Gf.get(r, k)) row.add_at(off[x] + k * fx + col, a);
            for (size_t k = 0; k < fy; ++k)
              if (uint32_t a = Ff.get(k, col)) row.add_at(off[y] + r * fy + k, p - a);
            if (!row.is_zero()) eqs.insert(std::move(row));
          }
      }
    }
  std::vector<NatTrans> out;
  for (size_t j : eqs.non_pivots()) {
    std::vector<uint32_t> sol(unknowns, 0);
    sol[j] = 1;
    for (size_t i = 0; i < eqs.dim(); ++i)
      if (uint32_t a = eqs.basis()[i].get(j)) sol[eqs.pivots()[i]] = (p - a) % p;
    std::vector<FMat> comps;
    for (ObjId x = 0; x < n; ++x) {
      FMat m(p, G.dim(x), F.dim(x));
      for (size_t r = 0; r < G.dim(x); ++r)
        for (size_t col = 0; col < F.dim(x); ++col) m.set(r, col, sol[off[x] + r * F.dim(x) + col]);
      comps.push_back(std::move(m));
    }
    out.emplace_back(F, G, std::move(comps));
  }
  return out;
}

FVec yoneda_to_vector(const NatTrans& eta, ObjId t) {
  return eta.at(t).column(eta.src().cat().id(t).idx);
}

NatTrans yoneda_from_vector(const FunRep& projective, ObjId t, const FunRep& F, const FVec& v) {
  if (v.size() != F.dim(t)) throw ArgumentError("yoneda_from_vector: vector does not live in F(t)");
  const FinCat c = F.cat();
  return NatTrans(projective, F, [c, t, F, v](ObjId u) {
    const HomIdx n = c.hom_size(t, u);
    FMat m(F.field(), F.dim(u), n);
    for (HomIdx b = 0; b < n; ++b) {
      const FVec w = F.apply(Mor{t, u, b}, v);
      for_each_nonzero(w, [&](size_t r, uint32_t a) { m.set(r, b, a); });
    }
    return m;
  });
}

// ---------------------------------------------------------------- sub / quotient

SubResult subfunctor(const FunRep& F, std::vector<size_t> dims, std::function<EchelonBasis(ObjId)> basis,
                     std::string label) {
  auto bases = std::make_shared<LazyTable<EchelonBasis>>(F.cat().num_objects(), [basis, dims, F](size_t x) {
    EchelonBasis b = basis(static_cast<ObjId>(x));
    if (b.dim() != dims[x] || b.ambient() != F.dim(static_cast<ObjId>(x)))
      throw InvariantViolation("subfunctor: basis at object " + std::to_string(x) + " has dimension " +
                               std::to_string(b.dim()) + ", expected " + std::to_string(dims[x]));
    return b;
  });
  const uint32_t p = F.field();
  auto lift = [bases, p](ObjId x, const FVec& v) {
    const EchelonBasis& b = bases->get(x);
    FVec w(p, b.ambient());
    for_each_nonzero(v, [&](size_t i, uint32_t c) { w.axpy(c, b.basis()[i]); });
    return w;
  };
  auto down = [bases, p, label](ObjId y, const FVec& w) {
    const EchelonBasis& b = bases->get(y);
    if (!b.contains(w)) throw InvariantViolation(label + ": image leaves the subfunctor");
    return FVec::from_values(p, b.coordinates(w));
  };
  FunRep::Apply apply = [F, lift, down](const Mor& f, const FVec& v) { return down(f.dst, F.apply(f, lift(f.src, v))); };
  FunRep::Action action = [F, bases, down, p](const Mor& f) {
    const EchelonBasis& bx = bases->get(f.src);
    FMat out(p, bases->get(f.dst).dim(), bx.dim());
    if (bx.dim() == 0 || out.rows() == 0) return out;
    if (F.is_set_like()) {
      for (size_t j = 0; j < bx.dim(); ++j) out.set_column(j, down(f.dst, F.apply(f, bx.basis()[j])));
    } else {
      const FMat m = F.act(f) * bx.as_columns();
      for (size_t j = 0; j < bx.dim(); ++j) out.set_column(j, down(f.dst, m.column(j)));
    }
    return out;
  };
  FunRep sub(F.cat(), p, dims, std::move(action), std::move(apply), label);
  NatTrans inc(sub, F, [bases](ObjId x) { return bases->get(x).as_columns(); });
  return SubResult{std::move(sub), std::move(inc)};
}

SubResult quotient(const FunRep& F, std::vector<size_t> dims, std::function<EchelonBasis(ObjId)> basis,
                   std::string label) {
  struct Q {
    EchelonBasis b;
    std::vector<size_t> np;
  };
  auto qs = std::make_shared<LazyTable<Q>>(F.cat().num_objects(), [basis, dims, F](size_t x) {
    Q q{basis(static_cast<ObjId>(x)), {}};
    q.np = q.b.non_pivots();
    if (q.np.size() != dims[x] || q.b.ambient() != F.dim(static_cast<ObjId>(x)))
      throw InvariantViolation("quotient: dimension mismatch at object " + std::to_string(x));
    return q;
  });
  const uint32_t p = F.field();
  auto lift = [qs, p](ObjId x, const FVec& v) {
    const Q& q = qs->get(x);
    FVec w(p, q.b.ambient());
    for_each_nonzero(v, [&](size_t i, uint32_t c) { w.set(q.np[i], c); });
    return w;
  };
  auto down = [qs, p](ObjId y, const FVec& w) { return FVec::from_values(p, qs->get(y).b.quotient_coordinates(w)); };
  FunRep::Apply apply = [F, lift, down](const Mor& f, const FVec& v) { return down(f.dst, F.apply(f, lift(f.src, v))); };
  FunRep::Action action = [F, qs, down, p](const Mor& f) {
    const Q& qx = qs->get(f.src);
    FMat out(p, qs->get(f.dst).np.size(), qx.np.size());
    if (out.cols() == 0 || out.rows() == 0) return out;
    if (F.is_set_like()) {
      for (size_t j = 0; j < qx.np.size(); ++j)
        out.set_column(j, down(f.dst, F.apply(f, FVec::unit(p, F.dim(f.src), qx.np[j]))));
    } else {
      const FMat m = F.act(f);
      for (size_t j = 0; j < qx.np.size(); ++j) out.set_column(j, down(f.dst, m.column(qx.np[j])));
    }
    return out;
  };
  FunRep quo(F.cat(), p, dims, std::move(action), std::move(apply), label);
  NatTrans proj(F, quo, [qs, F, p](ObjId x) {
    const Q& q = qs->get(x);
    FMat m(p, q.np.size(), F.dim(x));
    for (size_t c = 0; c < F.dim(x); ++c) m.set_column(c, FVec::from_values(p, q.b.quotient_coordinates(FVec::unit(p, F.dim(x), c))));
    return m;
  });
  return SubResult{std::move(quo), std::move(proj)};
}

SubResult kernel(const NatTrans& eta) {
  const FunRep& src = eta.src();
  std::vector<size_t> dims;
  for (ObjId x = 0; x < src.cat().num_objects(); ++x) dims.push_back(src.dim(x) - rank(eta.at(x)));
  return subfunctor(src, std::move(dims), [eta](ObjId x) { return EchelonBasis::kernel_of(eta.at(x)); },
                    "ker(" + src.label() + "->" + eta.dst().label() + ")");
}

SubResult image(const NatTrans& eta) {
  const FunRep& dst = eta.dst();
  std::vector<size_t> dims;
  for (ObjId x = 0; x < dst.cat().num_objects(); ++x) dims.push_back(rank(eta.at(x)));
  return subfunctor(dst, std::move(dims), [eta](ObjId x) { return EchelonBasis::column_span(eta.at(x)); },
                    "im(" + eta.src().label() + "->" + dst.label() + ")");
}

SubResult cokernel(const NatTrans& eta) {
  const FunRep& dst = eta.dst();
  std::vector<size_t> dims;
  for (ObjId x = 0; x < dst.cat().num_objects(); ++x) dims.push_back(dst.dim(x) - rank(eta.at(x)));
  return quotient(dst, std::move(dims), [eta](ObjId x) { return EchelonBasis::column_span(eta.at(x)); },
                  "coker(" + eta.src().label() + "->" + dst.label() + ")");
}

SubResult subfunctor_generated(const FunRep& F, const std::vector<std::pair<ObjId, FVec>>& seeds, const Caps& caps) {
  const FinCat& c = F.cat();
  const ObjId n = static_cast<ObjId>(c.num_objects());
  auto spans = std::make_shared<std::vector<EchelonBasis>>();
  std::vector<size_t> dims;
  for (ObjId x = 0; x < n; ++x) {
    EchelonBasis b(F.field(), F.dim(x));
    for (const auto& [t, v] : seeds) {
      if (v.size() != F.dim(t)) throw ArgumentError("subfunctor_generated: seed does not live in F(t)");
      const HomIdx h = c.hom_size(t, x);
      if (h > caps.enumeration) throw CapExceeded("subfunctor_generated pushforwards", h, caps.enumeration);
      for (HomIdx i = 0; i < h && b.dim() < F.dim(x); ++i) b.insert(F.apply(Mor{t, x, i}, v));
    }
    dims.push_back(b.dim());
    spans->push_back(std::move(b));
  }
  return subfunctor(F, std::move(dims), [spans](ObjId x) { return (*spans)[x]; }, "<gen in " + F.label() + ">");
}

// ---------------------------------------------------------------- tensor, sums, duals

FunRep tensor_pointwise(const FunRep& F, const FunRep& G) {
  require_same(F, G, "tensor_pointwise");
  std::vector<size_t> dims;
  for (ObjId x = 0; x < F.cat().num_objects(); ++x) dims.push_back(F.dim(x) * G.dim(x));
  const std::string label = "(" + F.label() + "(x)" + G.label() + ")";
  if (F.is_set_like() && G.is_set_like()) {
    return FunRep::set_like(F.cat(), F.field(), std::move(dims),
                            [F, G](const Mor& f, uint64_t b) {
                              const uint64_t ng = G.dim(f.src);
                              return F.basis_image(f, b / ng) * G.dim(f.dst) + G.basis_image(f, b % ng);
                            },
                            label);
  }
  return FunRep(F.cat(), F.field(), std::move(dims), [F, G](const Mor& f) { return kron(F.act(f), G.act(f)); }, label);
}

FunRep external_tensor(const FunRep& F, const FunRep& G, const ProductData& cd) {
  if (!cd.pr1.target().same_as(F.cat()) || !cd.pr2.target().same_as(G.cat()))
    throw ArgumentError("external_tensor: product category does not match the factors");
  if (F.field() != G.field()) throw ArgumentError("external_tensor: field mismatch");
  std::vector<size_t> dims;
  for (ObjId x = 0; x < cd.cat.num_objects(); ++x)
    dims.push_back(F.dim(cd.pr1.on_object(x)) * G.dim(cd.pr2.on_object(x)));
  const std::string label = "(" + F.label() + "[x]" + G.label() + ")";
  if (F.is_set_like() && G.is_set_like()) {
    return FunRep::set_like(cd.cat, F.field(), std::move(dims),
                            [F, G, cd](const Mor& h, uint64_t b) {
                              const auto [f, g] = split_product_morphism(cd, h);
                              const uint64_t ng = G.dim(g.src);
                              return F.basis_image(f, b / ng) * G.dim(g.dst) + G.basis_image(g, b % ng);
                            },
                            label);
  }
  return FunRep(cd.cat, F.field(), std::move(dims),
                [F, G, cd](const Mor& h) {
                  const auto [f, g] = split_product_morphism(cd, h);
                  return kron(F.act(f), G.act(g));
                },
                label);
}

NatTrans projective_tensor_iso(const FinCat& c, ObjId a, ObjId b, uint32_t p) {
  if (!c.is_matrix()) throw ArgumentError("projective_tensor_iso: needs a category of free modules");
  const size_t ra = c.rank_of(a), rb = c.rank_of(b);
  const auto sum = c.object_of_rank(ra + rb);
  if (!sum) throw ArgumentError("projective_tensor_iso: A^" + std::to_string(ra + rb) + " is not an object");
  const FunRep src = tensor_pointwise(standard_projective(c, a, p), standard_projective(c, b, p));
  const FunRep dst = standard_projective(c, *sum, p);
  const FinRing ring = c.matrix().ring;
  return NatTrans(src, dst, [c, a, b, s = *sum, ra, rb, p, ring](ObjId u) {
    const uint64_t na = c.hom_size(a, u), nb = c.hom_size(b, u);
    const size_t ru = c.rank_of(u);
    FMat m(p, static_cast<size_t>(c.hom_size(s, u)), static_cast<size_t>(na * nb));
    for (uint64_t i = 0; i < na; ++i) {
      const RMat f = c.payload(Mor{a, u, i});
      for (uint64_t j = 0; j < nb; ++j) {
        const RMat g = c.payload(Mor{b, u, j});
        RMat h(ring, ru, ra + rb);
        for (size_t r = 0; r < ru; ++r) {
          for (size_t k = 0; k < ra; ++k) h.set(r, k, f.at(r, k));
          for (size_t k = 0; k < rb; ++k) h.set(r, ra + k, g.at(r, k));
        }
        m.set(static_cast<size_t>(c.morphism(s, u, h).idx), static_cast<size_t>(i * nb + j), 1);
      }
    }
    return m;
  });
}

NatTrans projective_external_iso(const ProductData& cd, ObjId c, ObjId d, uint32_t p) {
  const FinCat& cc = cd.pr1.target();
  const FinCat& dd = cd.pr2.target();
  const FunRep src = external_tensor(standard_projective(cc, c, p), standard_projective(dd, d, p), cd);
  const ObjId cdobj = cd.object(c, d);
  const FunRep dst = standard_projective(cd.cat, cdobj, p);
  return NatTrans(src, dst, [cd, cc, dd, c, d, cdobj, p](ObjId x) {
    const ObjId u = cd.pr1.on_object(x), v = cd.pr2.on_object(x);
    const uint64_t nf = cc.hom_size(c, u), ng = dd.hom_size(d, v);
    FMat m(p, static_cast<size_t>(cd.cat.hom_size(cdobj, x)), static_cast<size_t>(nf * ng));
    for (uint64_t i = 0; i < nf; ++i)
      for (uint64_t j = 0; j < ng; ++j) {
        const Mor h = product_morphism(cd, Mor{c, u, i}, Mor{d, v, j});
        m.set(static_cast<size_t>(h.idx), static_cast<size_t>(i * ng + j), 1);
      }
    return m;
  });
}

FunRep precompose(const FunRep& F, const CatFunctor& phi) {
  if (!phi.target().same_as(F.cat())) throw ArgumentError("precompose: functor target is not the domain of F");
  std::vector<size_t> dims;
  for (ObjId x = 0; x < phi.source().num_objects(); ++x) dims.push_back(F.dim(phi.on_object(x)));
  const std::string label = F.label() + "*" + phi.name();
  if (F.is_set_like())
    return FunRep::set_like(phi.source(), F.field(), std::move(dims),
                            [F, phi](const Mor& f, uint64_t b) { return F.basis_image(phi.on_morphism(f), b); }, label);
  return FunRep(
      phi.source(), F.field(), std::move(dims), [F, phi](const Mor& f) { return F.act(phi.on_morphism(f)); },
      [F, phi](const Mor& f, const FVec& v) { return F.apply(phi.on_morphism(f), v); }, label);
}

FunRep direct_sum(const FunRep& F, const FunRep& G) {
  require_same(F, G, "direct_sum");
  std::vector<size_t> dims;
  for (ObjId x = 0; x < F.cat().num_objects(); ++x) dims.push_back(F.dim(x) + G.dim(x));
  const std::string label = "(" + F.label() + "+" + G.label() + ")";
  if (F.is_set_like() && G.is_set_like()) {
    return FunRep::set_like(F.cat(), F.field(), std::move(dims),
                            [F, G](const Mor& f, uint64_t b) {
                              const uint64_t nf = F.dim(f.src);
                              return b < nf ? F.basis_image(f, b) : F.dim(f.dst) + G.basis_image(f, b - nf);
                            },
                            label);
  }
  return FunRep(F.cat(), F.field(), std::move(dims),
                [F, G](const Mor& f) { return block_diag(F.act(f), G.act(f)); }, label);
}

FunRep direct_sum(const std::vector<FunRep>& fs, const FinCat& c, uint32_t p) {
  if (fs.empty()) return zero_functor(c, p);
  FunRep acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = direct_sum(acc, fs[i]);
  return acc;
}

FunRep dual(const FunRep& F) {
  const FinCat op = opposite(F.cat());
  return FunRep(op, F.field(), F.dims(),
                [F](const Mor& m) { return F.act(Mor{m.dst, m.src, m.idx}).transpose(); }, "D(" + F.label() + ")");
}

std::pair<FunRep, NatTrans> conjugate(const FunRep& F, std::vector<FMat> changes) {
  const size_t n = F.cat().num_objects();
  if (changes.size() != n) throw ArgumentError("conjugate: one basis change per object required");
  std::vector<FMat> inverses;
  for (ObjId x = 0; x < n; ++x) {
    if (changes[x].rows() != F.dim(x) || changes[x].cols() != F.dim(x)) throw ArgumentError("conjugate: bad shape");
    auto inv = inverse(changes[x]);
    if (!inv) throw ArgumentError("conjugate: basis change is singular");
    inverses.push_back(std::move(*inv));
  }
  auto q = std::make_shared<std::vector<FMat>>(changes);
  auto qi = std::make_shared<std::vector<FMat>>(std::move(inverses));
  FunRep G(F.cat(), F.field(), F.dims(), [F, q, qi](const Mor& f) { return (*q)[f.dst] * F.act(f) * (*qi)[f.src]; },
           F.label() + "^Q");
  NatTrans iso(F, G, std::move(changes));
  return {std::move(G), std::move(iso)};
}

// ---------------------------------------------------------------- Schur constructions

SchurKind parse_schur_kind(const std::string& name) {
  if (name == "T") return SchurKind::Tensor;
  if (name == "Lambda") return SchurKind::Exterior;
  if (name == "S") return SchurKind::Symmetric;
  if (name == "Gamma") return SchurKind::Divided;
  throw UsageError("unknown Schur construction '" + name + "'");
}

std::string schur_name(SchurKind kind) {
  switch (kind) {
    case SchurKind::Tensor: return "T";
    case SchurKind::Exterior: return "Lambda";
    case SchurKind::Symmetric: return "S";
    case SchurKind::Divided: return "Gamma";
  }
  return "?";
}

namespace {

uint64_t ipow(uint64_t b, size_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<size_t> digits(uint64_t idx, size_t n, size_t d) {
  std::vector<size_t> I(d);
  for (size_t k = d; k-- > 0;) {
    I[k] = idx % n;
    idx /= n;
  }
  return I;
}

uint64_t undigits(const std::vector<size_t>& I, size_t n) {
  uint64_t idx = 0;
  for (size_t i : I) idx = idx * n + i;
  return idx;
}

uint64_t binom(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

FunRep schur_construction(const FunRep& F, SchurKind kind, size_t d, const Caps& caps) {
  const FinCat& c = F.cat();
  const uint32_t p = F.field();
  const ObjId nobj = static_cast<ObjId>(c.num_objects());
  const std::string label = schur_name(kind) + std::to_string(d) + "(" + F.label() + ")";
  if (d == 0) return constant_functor(c, p).relabeled(label);
  for (ObjId x = 0; x < nobj; ++x) {
    uint64_t t = 1;
    for (size_t k = 0; k < d; ++k) t = checked_product(t, F.dim(x), caps, label);
  }
  FunRep T = F;
  for (size_t k = 1; k < d; ++k) T = tensor_pointwise(T, F);
  if (kind == SchurKind::Tensor) return T.relabeled(label);

  std::vector<size_t> dims;
  for (ObjId x = 0; x < nobj; ++x) {
    const uint64_t n = F.dim(x);
    dims.push_back(kind == SchurKind::Exterior ? binom(n, d) : binom(n + d - 1, d));
  }
  if (kind == SchurKind::Divided) {
    auto basis = [F, d, p](ObjId x) {
      const size_t n = F.dim(x);
      const uint64_t total = ipow(n, d);
      EchelonBasis b(p, total);
      for (uint64_t idx = 0; idx < total; ++idx) {
        std::vector<size_t> I = digits(idx, n, d);
        if (!std::is_sorted(I.begin(), I.end())) continue;
        FVec v(p, total);
        do {
          v.set(undigits(I, n), 1);
        } while (std::next_permutation(I.begin(), I.end()));
        b.insert(std::move(v));
      }
      return b;
    };
    return subfunctor(T, std::move(dims), basis, label).rep;
  }
  const bool exterior = kind == SchurKind::Exterior;
  auto relations = [F, d, p, exterior](ObjId x) {
    const size_t n = F.dim(x);
    const uint64_t total = ipow(n, d);
    EchelonBasis b(p, total);
    for (uint64_t idx = 0; idx < total; ++idx) {
      std::vector<size_t> I = digits(idx, n, d);
      if (exterior) {
        std::vector<size_t> s = I;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
          b.insert(FVec::unit(p, total, idx));
          continue;
        }
      }
      for (size_t k = 0; k + 1 < d; ++k) {
        std::vector<size_t> J = I;
        std::swap(J[k], J[k + 1]);
        const uint64_t jdx = undigits(J, n);
        if (jdx == idx) continue;
        FVec v = FVec::unit(p, total, idx);
        v.add_at(jdx, exterior ? 1 : p - 1);
        b.insert(std::move(v));
      }
    }
    return b;
  };
  return quotient(T, std::move(dims), relations, label).rep;
}

}  // namespace fonctex
