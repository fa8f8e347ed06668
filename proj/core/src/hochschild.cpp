#include "fonctex/hochschild.hpp"

#include <algorithm>
#include <memory>

#include "detail/lazy.hpp"
#include "fonctex/error.hpp"
#include "fonctex/polyfun.hpp"
#include "fonctex/strings.hpp"

namespace fonctex {

namespace {

uint32_t sign(uint32_t p, size_t i) { return i % 2 ? p - 1 : 1; }

void require_matrix(const FinCat& c, const char* what) {
  if (!c.is_matrix()) throw ArgumentError(std::string(what) + ": needs a category of free modules, got " + c.spec());
}

// Canonical index of the n x n matrix [[X, 0], [0, 1_k]] for X of index m.
uint64_t block_index(const FinRing& ring, size_t n, size_t k, uint64_t m) {
  return block_diag(RMat::from_index(ring, n, n, m), RMat::identity(ring, k)).index();
}

// Matrices [1_n 0] : A^{n+k} -> A^n and [1_n; 0] : A^n -> A^{n+k} in c.
std::pair<Mor, Mor> projection_inclusion(const FinCat& c, size_t n, size_t k) {
  const FinRing ring = c.matrix().ring;
  const auto small = c.object_of_rank(n), big = c.object_of_rank(n + k);
  if (!small || !big) throw ArgumentError("stabilization: A^" + std::to_string(n + k) + " is not in " + c.spec());
  RMat pr(ring, n, n + k), inc(ring, n + k, n);
  for (size_t i = 0; i < n; ++i) {
    pr.set(i, i, 1);
    inc.set(i, i, 1);
  }
  return {c.morphism(*big, *small, pr), c.morphism(*small, *big, inc)};
}

}  // namespace

// ---- bifunctors

FMat BiFunRep::act(const Mor& f, const Mor& g) const {
  return rep.act(product_morphism(prod, Mor{f.dst, f.src, f.idx}, g));
}

BiFunRep make_bifunctor(const FinCat& c, const FunRep& on_product) {
  BiFunRep b;
  b.cat = c;
  b.prod = product(opposite(c), c);
  if (!on_product.cat().same_as(b.prod.cat))
    throw ArgumentError("bifunctor: expected a functor on " + b.prod.cat.spec() + ", got one on " + on_product.cat().spec());
  b.rep = on_product;
  return b;
}

BiFunRep dual_tensor_bifunctor(const FinCat& c, uint32_t p) {
  const FunRep id = identity_functor_rep(c, p);
  const ProductData pd = product(opposite(c), c);
  return make_bifunctor(c, external_tensor(dual(id), id, pd).relabeled("dualtensor"));
}

BiFunRep constant_bifunctor(const FinCat& c, uint32_t p, size_t dim) {
  const ProductData pd = product(opposite(c), c);
  return make_bifunctor(c, constant_functor(pd.cat, p, dim).relabeled("const"));
}

BiFunRep representable_bifunctor(const FunRep& f, ObjId t) {
  const FinCat& c = f.cat();
  const ProductData pd = product(opposite(c), c);
  const FunRep rep = standard_projective(opposite(c), t, f.field());
  return make_bifunctor(c, external_tensor(rep, f, pd).relabeled(f.label() + "(y)k[C(x," + c.object_name(t) + ")]"));
}

BiFunRep external_bifunctor(const FunRep& h, const FunRep& f) {
  const FinCat& c = f.cat();
  if (!h.cat().same_as(opposite(c))) throw ArgumentError("external_bifunctor: H must live on C^op");
  const ProductData pd = product(opposite(c), c);
  return make_bifunctor(c, external_tensor(h, f, pd));
}

BiFunRep restrict_bifunctor(const BiFunRep& b, const SubcategoryData& sub) {
  const ProductData pd = product(opposite(sub.cat), sub.cat);
  std::vector<ObjId> objs;
  for (ObjId x = 0; x < pd.cat.num_objects(); ++x)
    objs.push_back(b.prod.object(sub.objects[x / pd.n2], sub.objects[x % pd.n2]));
  const CatFunctor incl = sub.inclusion;
  const ProductData bp = b.prod;
  const CatFunctor phi(pd.cat, b.prod.cat, std::move(objs),
                       [pd, bp, incl](const Mor& h) {
                         const auto [f, g] = split_product_morphism(pd, h);
                         const Mor f2 = incl.on_morphism(Mor{f.dst, f.src, f.idx});
                         return product_morphism(bp, Mor{f2.dst, f2.src, f2.idx}, incl.on_morphism(g)).idx;
                       },
                       "incl x incl");
  return make_bifunctor(sub.cat, precompose(b.rep, phi).relabeled(b.label() + "|"));
}

FunRep first_variable(const BiFunRep& b, ObjId t) {
  require_matrix(b.cat, "first_variable");
  const FinCat c = b.cat;
  const ProductData pd = b.prod;
  std::vector<ObjId> objs;
  for (ObjId x = 0; x < c.num_objects(); ++x) objs.push_back(pd.object(x, t));
  const CatFunctor phi(c, pd.cat, std::move(objs),
                       [c, pd, t](const Mor& f) {
                         const RMat m = c.payload(f);
                         RMat tr(m.ring(), m.cols(), m.rows());
                         for (size_t r = 0; r < m.rows(); ++r)
                           for (size_t k = 0; k < m.cols(); ++k) tr.set(k, r, m.at(r, k));
                         // f^T : y -> x in C is a morphism x -> y of C^op.
                         const Mor ft = c.morphism(f.dst, f.src, tr);
                         return product_morphism(pd, Mor{f.src, f.dst, ft.idx}, c.id(t)).idx;
                       },
                       "(-)^T x " + c.object_name(t));
  return precompose(b.rep, phi).relabeled(b.label() + "(-," + c.object_name(t) + ")");
}

FunRep second_variable(const BiFunRep& b, ObjId t) {
  const FinCat c = b.cat;
  const ProductData pd = b.prod;
  std::vector<ObjId> objs;
  for (ObjId x = 0; x < c.num_objects(); ++x) objs.push_back(pd.object(t, x));
  const CatFunctor phi(c, pd.cat, std::move(objs),
                       [c, pd, t](const Mor& f) { return product_morphism(pd, c.id(t), f).idx; },
                       c.object_name(t) + " x -");
  return precompose(b.rep, phi).relabeled(b.label() + "(" + c.object_name(t) + ",-)");
}

BifunctorDegree bifunctor_degree(const BiFunRep& b, size_t window) {
  BifunctorDegree out;
  auto scan = [&](auto&& var) -> std::optional<int> {
    int worst = -1;
    for (ObjId t = 0; t < b.cat.num_objects(); ++t) {
      const auto d = degree(var(b, t), window).degree;
      if (!d) return std::nullopt;
      worst = std::max(worst, *d);
    }
    return worst;
  };
  out.first = scan(first_variable);
  out.second = scan(second_variable);
  return out;
}

// ---- generic cyclic bar complex

ColumnComplex hh_complex(const BiFunRep& b, size_t top, const Caps& caps) {
  const FinCat c = b.cat;
  const uint32_t p = b.field();
  auto idx = std::make_shared<std::vector<StringIndex>>();
  for (size_t n = 0; n <= top; ++n)
    idx->emplace_back(c, n, [&b](ObjId first, ObjId last) { return static_cast<uint64_t>(b.dim(last, first)); }, caps);
  ColumnComplex cx;
  cx.p = p;
  cx.lo = 0;
  cx.hi = static_cast<int>(top);
  cx.dim = [idx](int n) { return (*idx)[static_cast<size_t>(n)].total(); };
  cx.column = [idx, b, c, p](int n_, uint64_t j) {
    const size_t n = static_cast<size_t>(n_);
    if (n == 0) return FVec(p, 0);
    const StringIndex& src = (*idx)[n];
    const StringIndex& dst = (*idx)[n - 1];
    std::vector<HomIdx> arrows(n);
    uint64_t inner = 0;
    const StringIndex::Block& blk = src.locate(j, arrows.data(), inner);
    const ObjId* x = blk.objs.data();
    const size_t bdim = b.dim(x[n], x[0]);
    FVec out(p, dst.total());
    std::vector<ObjId> o(n);
    std::vector<HomIdx> a(n - 1);

    // d_0: B(x_n, a_1) moves the coefficient to B(x_n, x_1).
    std::copy(x + 1, x + n + 1, o.begin());
    std::copy(arrows.begin() + 1, arrows.end(), a.begin());
    {
      const Mor op_id{x[n], x[n], c.id(x[n]).idx};
      const FVec v = b.rep.apply(product_morphism(b.prod, op_id, Mor{x[0], x[1], arrows[0]}), FVec::unit(p, bdim, inner));
      detail::for_each_nonzero(v, [&](size_t k, uint32_t val) { out.add_at(dst.index(o.data(), a.data(), k), val); });
    }

    for (size_t i = 1; i < n; ++i) {
      size_t w = 0;
      for (size_t k = 0; k <= n; ++k)
        if (k != i) o[w++] = x[k];
      w = 0;
      for (size_t k = 0; k < n; ++k) {
        if (k == i - 1) {
          a[w++] = c.compose(Mor{x[i], x[i + 1], arrows[i]}, Mor{x[i - 1], x[i], arrows[i - 1]}).idx;
          ++k;
        } else {
          a[w++] = arrows[k];
        }
      }
      out.add_at(dst.index(o.data(), a.data(), inner), sign(p, i));
    }

    // d_n: B(a_n, x_0) moves the coefficient to B(x_{n-1}, x_0).
    std::copy(x, x + n, o.begin());
    std::copy(arrows.begin(), arrows.end() - 1, a.begin());
    {
      const Mor op_an{x[n], x[n - 1], arrows[n - 1]};
      const FVec v = b.rep.apply(product_morphism(b.prod, op_an, c.id(x[0])), FVec::unit(p, bdim, inner));
      const uint32_t s = sign(p, n);
      detail::for_each_nonzero(v, [&](size_t k, uint32_t val) {
        out.add_at(dst.index(o.data(), a.data(), k), val * s % p);
      });
    }
    return out;
  };
  return cx;
}

namespace {

HHResult hh_from_complex(const ColumnComplex& cx, size_t i_max, const Caps& caps) {
  HHResult r;
  for (size_t n = 0; n <= i_max + 1; ++n) r.chain_dims.push_back(cx.dim_at(static_cast<int>(n)));
  for (size_t i = 0; i <= i_max; ++i) {
    r.data.push_back(homology(cx, static_cast<int>(i), caps));
    r.dims.push_back(r.data.back().dim);
    r.columns_checked += r.data.back().columns_checked;
  }
  return r;
}

}  // namespace

HHResult hh(const BiFunRep& b, size_t i_max, const Caps& caps) {
  HHResult r = hh_from_complex(hh_complex(b, i_max + 1, caps), i_max, caps);
  r.category = b.cat.spec();
  r.coefficients = b.label();
  r.fingerprint = b.rep.fingerprint();
  r.method = "cyclic bar complex over the category";
  return r;
}

// ---- monoid path

Bimodule monoid_bimodule(const BiFunRep& b, ObjId x) {
  require_matrix(b.cat, "monoid_bimodule");
  const FinCat& c = b.cat;
  Bimodule v;
  v.p = b.field();
  v.dim = b.dim(x, x);
  v.ring = c.matrix().ring;
  v.n = c.rank_of(x);
  const uint64_t order = c.hom_size(x, x);
  if (order > (uint64_t{1} << 16)) throw CapExceeded("monoid_bimodule: |End(" + c.object_name(x) + ")|", order, 1u << 16);
  for (HomIdx m = 0; m < order; ++m) {
    v.left.push_back(b.act(c.id(x), Mor{x, x, m}));
    v.right.push_back(b.act(Mor{x, x, m}, c.id(x)));
  }
  v.label = b.label() + "(" + c.object_name(x) + "," + c.object_name(x) + ")";
  return v;
}

ColumnComplex hh_monoid_complex(const Bimodule& v, size_t top, const Caps& caps) {
  const uint64_t order = v.order();
  const uint32_t p = v.p;
  auto dims = std::make_shared<std::vector<uint64_t>>();
  uint64_t words = 1;
  for (size_t k = 0; k <= top; ++k) {
    const uint64_t d = words * v.dim;
    if (v.dim && (d / v.dim != words || d > caps.chain_dim)) throw CapExceeded("hh_monoid: C_" + std::to_string(k), d, caps.chain_dim);
    dims->push_back(d);
    if (words > caps.chain_dim) words = caps.chain_dim + 1;  // only reached when dim = 0
    else words *= order;
  }

  // Multiplication table when it is small enough.
  auto table = std::make_shared<std::vector<uint32_t>>();
  const bool tabulate = order * order <= (uint64_t{1} << 22);
  std::vector<RMat> elems;
  for (uint64_t m = 0; m < order; ++m) elems.push_back(RMat::from_index(v.ring, v.n, v.n, m));
  if (tabulate) {
    table->resize(order * order);
    for (uint64_t a = 0; a < order; ++a)
      for (uint64_t b = 0; b < order; ++b) (*table)[a * order + b] = static_cast<uint32_t>(mat_mul(elems[a], elems[b]).index());
  }
  auto el = std::make_shared<const std::vector<RMat>>(std::move(elems));
  auto mod = std::make_shared<const Bimodule>(v);
  auto times = [table, el, order, tabulate](uint64_t a, uint64_t b) -> uint64_t {
    return tabulate ? (*table)[a * order + b] : mat_mul((*el)[a], (*el)[b]).index();
  };

  ColumnComplex cx;
  cx.p = p;
  cx.lo = 0;
  cx.hi = static_cast<int>(top);
  cx.dim = [dims](int n) { return (*dims)[static_cast<size_t>(n)]; };
  cx.column = [dims, mod, order, p, times](int n_, uint64_t j) {
    const size_t n = static_cast<size_t>(n_);
    if (n == 0) return FVec(p, 0);
    const size_t dim = mod->dim;
    const uint64_t inner = j % dim;
    uint64_t w = j / dim;
    std::vector<uint64_t> m(n);
    for (size_t i = n; i-- > 0;) {
      m[i] = w % order;
      w /= order;
    }
    auto word_index = [&](const std::vector<uint64_t>& ws) {
      uint64_t r = 0;
      for (uint64_t d : ws) r = r * order + d;
      return r;
    };
    FVec out(p, (*dims)[n - 1]);
    std::vector<uint64_t> ws(n - 1);

    // d_0: left action of m_1.
    std::copy(m.begin() + 1, m.end(), ws.begin());
    const uint64_t base0 = word_index(ws) * dim;
    const FVec l = mod->left[m[0]].column(inner);
    detail::for_each_nonzero(l, [&](size_t k, uint32_t val) { out.add_at(base0 + k, val); });

    for (size_t i = 1; i < n; ++i) {
      size_t q = 0;
      for (size_t k = 0; k < n; ++k) {
        if (k == i - 1) {
          ws[q++] = times(m[i], m[i - 1]);  // m_{i+1} m_i
          ++k;
        } else {
          ws[q++] = m[k];
        }
      }
      out.add_at(word_index(ws) * dim + inner, sign(p, i));
    }

    // d_n: right action of m_n.
    std::copy(m.begin(), m.end() - 1, ws.begin());
    const uint64_t basen = word_index(ws) * dim;
    const FVec r = mod->right[m[n - 1]].column(inner);
    const uint32_t s = sign(p, n);
    detail::for_each_nonzero(r, [&](size_t k, uint32_t val) { out.add_at(basen + k, val * s % p); });
    return out;
  };
  return cx;
}

HHResult hh_monoid(const Bimodule& v, size_t i_max, const Caps& caps) {
  HHResult r = hh_from_complex(hh_monoid_complex(v, i_max + 1, caps), i_max, caps);
  r.category = "M(" + v.ring.spec() + "," + std::to_string(v.n) + ")";
  r.coefficients = v.label;
  r.method = "cyclic bar complex over the monoid";
  return r;
}

// ---- maps on homology

HomologyMap induced_map(const HomologyData& src, const HomologyData& dst, const std::function<FVec(const FVec&)>& chain) {
  HomologyMap m;
  m.degree = static_cast<size_t>(src.degree);
  m.dim_src = src.dim;
  m.dim_dst = dst.dim;
  const uint32_t p = src.cycles.p();
  m.matrix = FMat(p, dst.dim, src.dim);
  for (size_t k = 0; k < src.classes.dim(); ++k) {
    const FVec img = chain(src.classes.basis()[k]);
    if (!dst.cycles.contains(img)) throw InvariantViolation("induced_map: image of a cycle is not a cycle");
    const auto coords = dst.class_of(img);
    for (size_t r = 0; r < coords.size(); ++r) m.matrix.set(r, k, coords[r]);
  }
  m.rank = rank(m.matrix);
  return m;
}

std::vector<HomologyMap> hh_pushforward(const BiFunRep& b, const std::vector<ObjId>& d_objects, size_t i_max,
                                        const Caps& caps) {
  const SubcategoryData sub = full_subcategory(b.cat, d_objects, caps);
  const BiFunRep bd = restrict_bifunctor(b, sub);
  const HHResult src = hh(bd, i_max, caps);
  const HHResult dst = hh(b, i_max, caps);
  std::vector<HomologyMap> out;
  for (size_t i = 0; i <= i_max; ++i) {
    const StringIndex si(sub.cat, i, [&bd](ObjId f, ObjId l) { return static_cast<uint64_t>(bd.dim(l, f)); }, caps);
    const StringIndex ti(b.cat, i, [&b](ObjId f, ObjId l) { return static_cast<uint64_t>(b.dim(l, f)); }, caps);
    const uint32_t p = b.field();
    auto chain = [&](const FVec& z) {
      FVec out(p, ti.total());
      std::vector<HomIdx> arrows(i), a2(i);
      std::vector<ObjId> o2(i + 1);
      detail::for_each_nonzero(z, [&](size_t q, uint32_t val) {
        uint64_t inner = 0;
        const StringIndex::Block& blk = si.locate(q, arrows.data(), inner);
        for (size_t k = 0; k <= i; ++k) o2[k] = sub.objects[blk.objs[k]];
        for (size_t k = 0; k < i; ++k)
          a2[k] = sub.inclusion.on_morphism(Mor{blk.objs[k], blk.objs[k + 1], arrows[k]}).idx;
        out.add_at(ti.index(o2.data(), a2.data(), inner), val);
      });
      return out;
    };
    out.push_back(induced_map(src.data[i], dst.data[i], chain));
  }
  return out;
}

// ---- stabilization

std::function<FVec(const FVec&)> stabilization_chain_map(const BiFunRep& family, size_t n, size_t k, size_t degree) {
  require_matrix(family.cat, "stabilization_chain_map");
  const FinCat& c = family.cat;
  const FinRing ring = c.matrix().ring;
  const auto [pr, inc] = projection_inclusion(c, n, k);
  const FMat phi = family.act(pr, inc);
  const ObjId xs = *c.object_of_rank(n), xb = *c.object_of_rank(n + k);
  const uint64_t order_s = c.hom_size(xs, xs), order_b = c.hom_size(xb, xb);
  std::vector<uint64_t> words(order_s);
  for (uint64_t m = 0; m < order_s; ++m) words[m] = block_index(ring, n, k, m);
  const size_t ds = family.dim(xs, xs), db = family.dim(xb, xb);
  uint64_t tgt = db;
  for (size_t i = 0; i < degree; ++i) tgt *= order_b;
  const uint32_t p = family.field();
  return [phi, words, order_s, order_b, ds, db, tgt, degree, p](const FVec& z) {
    FVec out(p, tgt);
    std::vector<uint64_t> m(degree);
    detail::for_each_nonzero(z, [&](size_t q, uint32_t val) {
      const uint64_t inner = q % ds;
      uint64_t w = q / ds;
      for (size_t i = degree; i-- > 0;) {
        m[i] = w % order_s;
        w /= order_s;
      }
      uint64_t r = 0;
      for (uint64_t d : m) r = r * order_b + words[d];
      detail::for_each_nonzero(phi.column(inner),
                               [&](size_t k, uint32_t v) { out.add_at(r * db + k, static_cast<uint32_t>(uint64_t{val} * v % p)); });
    });
    return out;
  };
}

void check_stabilization_equivariance(const BiFunRep& family, size_t n) {
  require_matrix(family.cat, "check_stabilization_equivariance");
  const FinCat& c = family.cat;
  const FinRing ring = c.matrix().ring;
  const auto [pr, inc] = projection_inclusion(c, n, 1);
  const FMat phi = family.act(pr, inc);
  const ObjId xs = *c.object_of_rank(n), xb = *c.object_of_rank(n + 1);
  for (HomIdx m = 0; m < c.hom_size(xs, xs); ++m) {
    const Mor big{xb, xb, block_index(ring, n, 1, m)};
    const Mor small{xs, xs, m};
    if (!(phi * family.act(c.id(xs), small) == family.act(c.id(xb), big) * phi) ||
        !(phi * family.act(small, c.id(xs)) == family.act(big, c.id(xb)) * phi))
      throw InvariantViolation("stabilization: B(pr, inc) is not equivariant at " + c.describe(small));
  }
}

namespace {

HHResult monoid_hh(const BiFunRep& family, size_t n, size_t i_max, const Caps& caps) {
  const auto x = family.cat.object_of_rank(n);
  if (!x) throw ArgumentError("stabilization: A^" + std::to_string(n) + " is not in " + family.cat.spec());
  return hh_monoid(monoid_bimodule(family, *x), i_max, caps);
}

}  // namespace

std::string required_flag(size_t d, size_t n, size_t i) {
  if (n >= d * (i + 2)) return "bijective";
  if (n + 1 >= d * (i + 2)) return "surjective";
  return "none";
}

StabRow stabilization_map(const BiFunRep& family, size_t n, size_t i, const Caps& caps) {
  check_stabilization_equivariance(family, n);
  StabRow row;
  row.i = i;
  row.n = n;
  const HHResult src = monoid_hh(family, n, i, caps);
  const HHResult dst = monoid_hh(family, n + 1, i, caps);
  row.map = induced_map(src.data[i], dst.data[i], stabilization_chain_map(family, n, 1, i));
  row.computed = true;
  return row;
}

std::string StabilityTable::csv() const {
  std::string out = "i,n,dim_src,dim_dst,injective,surjective,in_paper_range,required_flag,pass\n";
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  for (const StabRow& r : rows) {
    out += std::to_string(r.i) + "," + std::to_string(r.n) + ",";
    if (r.computed) {
      out += std::to_string(r.map.dim_src) + "," + std::to_string(r.map.dim_dst) + "," + b(r.map.injective()) + "," +
             b(r.map.surjective());
    } else {
      out += "NA,NA,NA,NA";
    }
    out += "," + b(r.in_range) + "," + r.required + "," + b(r.pass) + "\n";
  }
  return out;
}

StabilityTable verify_stability_range(const BiFunRep& family, size_t d, size_t i_max, size_t n_max, const Caps& caps) {
  StabilityTable t;
  t.d = d;
  t.i_max = i_max;
  t.n_max = n_max;
  if (n_max == 0) {
    t.verdict = "insufficient data";
    return t;
  }
  require_matrix(family.cat, "verify_stability_range");
  if (truncation_level(family.cat) < n_max)
    throw ArgumentError("verify_stability_range: the family must live on P_N with N >= n_max");
  t.degree = bifunctor_degree(family, d);
  t.degree_ok = t.degree.within(d);

  std::vector<std::optional<HHResult>> data(n_max + 1);
  for (size_t n = 0; n <= n_max; ++n) {
    try {
      data[n] = monoid_hh(family, n, i_max, caps);
      t.hh_dims.push_back(data[n]->dims);
    } catch (const CapExceeded&) {
      t.hh_dims.push_back({});
    }
  }
  bool incomplete = false, failed = false;
  std::vector<std::vector<HomologyMap>> maps(n_max);
  for (size_t n = 0; n < n_max; ++n) {
    check_stabilization_equivariance(family, n);
    for (size_t i = 0; i <= i_max; ++i) {
      StabRow row;
      row.i = i;
      row.n = n;
      row.required = required_flag(d, n, i);
      row.in_range = row.required != "none";
      if (data[n] && data[n + 1]) {
        row.map = induced_map(data[n]->data[i], data[n + 1]->data[i], stabilization_chain_map(family, n, 1, i));
        row.computed = true;
        maps[n].push_back(row.map);
        if (row.required == "bijective") row.pass = row.map.bijective();
        if (row.required == "surjective") row.pass = row.map.surjective();
      } else {
        row.note = "not computed";
        row.pass = !row.in_range;
        if (row.in_range) incomplete = true;
      }
      if (!row.pass && row.computed) failed = true;
      t.rows.push_back(std::move(row));
    }
  }

  // The map n -> n+2 of the composite chain map agrees with the composite on homology.
  for (size_t n = 0; n + 2 <= n_max; ++n) {
    if (!data[n] || !data[n + 2] || maps[n].size() <= i_max || maps[n + 1].size() <= i_max) continue;
    for (size_t i = 0; i <= i_max; ++i) {
      const HomologyMap direct = induced_map(data[n]->data[i], data[n + 2]->data[i], stabilization_chain_map(family, n, 2, i));
      if (!(maps[n + 1][i].matrix * maps[n][i].matrix == direct.matrix)) t.functoriality_ok = false;
    }
  }
  if (!t.functoriality_ok) throw InvariantViolation("stabilization maps do not compose");

  if (!t.degree_ok) t.verdict = "hypothesis not verified";
  else if (failed) t.verdict = "FAIL";
  else if (incomplete) t.verdict = "INCOMPLETE";
  else t.verdict = "PASS";
  return t;
}

}  // namespace fonctex
