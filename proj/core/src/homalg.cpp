#include "fonctex/homalg.hpp"

#include <algorithm>
#include <memory>
#include <random>

#include "detail/lazy.hpp"
#include "fonctex/error.hpp"
#include "fonctex/strings.hpp"

namespace fonctex {

namespace {

uint32_t sign(uint32_t p, size_t i) { return i % 2 ? p - 1 : 1; }

EchelonBasis full_space(uint32_t p, size_t n) {
  EchelonBasis e(p, n);
  for (size_t i = 0; i < n; ++i) e.insert(FVec::unit(p, n, i));
  return e;
}

void add_block(FMat& m, size_t r0, size_t c0, const FMat& b, uint32_t coef) {
  const uint32_t p = m.p();
  for (size_t r = 0; r < b.rows(); ++r)
    for (size_t c = 0; c < b.cols(); ++c) {
      const uint32_t v = b.get(r, c);
      if (v) m.set(r0 + r, c0 + c, (m.get(r0 + r, c0 + c) + v * coef) % p);
    }
}

}  // namespace

// ---- complexes and homology

ColumnComplex dense_complex(uint32_t p, int lo, std::vector<FMat> diffs) {
  if (diffs.empty()) throw ArgumentError("dense_complex: no terms");
  for (size_t k = 1; k < diffs.size(); ++k)
    if (diffs[k].rows() != diffs[k - 1].cols()) throw ArgumentError("dense_complex: differential shapes do not chain");
  auto d = std::make_shared<const std::vector<FMat>>(std::move(diffs));
  ColumnComplex cx;
  cx.p = p;
  cx.lo = lo;
  cx.hi = lo + static_cast<int>(d->size()) - 1;
  cx.dim = [d, lo](int n) { return (*d)[static_cast<size_t>(n - lo)].cols(); };
  cx.column = [d, lo](int n, uint64_t j) { return (*d)[static_cast<size_t>(n - lo)].column(j); };
  return cx;
}

FMat dense_differential(const ColumnComplex& cx, int n, const Caps& caps) {
  const size_t rows = cx.dim_at(n - 1), cols = cx.dim_at(n);
  const uint64_t words = static_cast<uint64_t>(rows) * ((cols + 63) / 64);
  if (words > caps.chain_dim) throw CapExceeded("dense differential d_" + std::to_string(n), words, caps.chain_dim);
  FMat m(cx.p, rows, cols);
  if (rows == 0) return m;
  for (size_t j = 0; j < cols; ++j) {
    const FVec col = cx.column(n, j);
    if (col.size() != rows) throw InvariantViolation("d_" + std::to_string(n) + ": column has wrong length");
    m.set_column(j, col);
  }
  return m;
}

std::vector<uint32_t> HomologyData::class_of(const FVec& z) const {
  if (!cycles.contains(z)) throw ArgumentError("class_of: vector is not a cycle");
  return classes.coordinates(boundaries.reduce(z));
}

HomologyData homology(const ColumnComplex& cx, int n, const Caps& caps) {
  HomologyData h;
  h.degree = n;
  const uint32_t p = cx.p;
  const size_t dn = cx.dim_at(n), dprev = cx.dim_at(n - 1), dnext = cx.dim_at(n + 1);
  const FMat d = dense_differential(cx, n, caps);
  h.cycles = EchelonBasis::kernel_of(d);
  h.boundaries = EchelonBasis(p, dn);
  if (dnext > caps.chain_dim) throw CapExceeded("columns of d_" + std::to_string(n + 1), dnext, caps.chain_dim);
  for (uint64_t j = 0; j < dnext; ++j) {
    FVec col = cx.column(n + 1, j);
    if (col.size() != dn) throw InvariantViolation("d_" + std::to_string(n + 1) + ": column has wrong length");
    if (dprev > 0 && !d.apply(col).is_zero())
      throw InvariantViolation("d_" + std::to_string(n) + " d_" + std::to_string(n + 1) + " != 0 at column " +
                               std::to_string(j));
    ++h.columns_checked;
    if (h.boundaries.dim() < h.cycles.dim()) h.boundaries.insert(std::move(col));
  }
  h.classes = EchelonBasis(p, dn);
  for (const FVec& z : h.cycles.basis()) h.classes.insert(h.boundaries.reduce(z));
  h.dim = h.classes.dim();
  if (h.dim + h.boundaries.dim() != h.cycles.dim()) throw InvariantViolation("homology: rank bookkeeping failed");
  return h;
}

size_t differential_rank(const ColumnComplex& cx, int n, const Caps& caps) {
  const size_t rows = cx.dim_at(n - 1), cols = cx.dim_at(n);
  if (cols > caps.chain_dim) throw CapExceeded("columns of d_" + std::to_string(n), cols, caps.chain_dim);
  EchelonBasis e(cx.p, rows);
  for (uint64_t j = 0; j < cols && e.dim() < rows; ++j) e.insert(cx.column(n, j));
  return e.dim();
}

ColumnComplex FunChainCx::at(ObjId x) const {
  if (terms.empty()) throw ArgumentError("FunChainCx: no terms");
  ColumnComplex cx;
  cx.p = terms[0].field();
  cx.lo = lo;
  cx.hi = hi();
  auto self = std::make_shared<const FunChainCx>(*this);
  cx.dim = [self, x](int n) { return self->terms[static_cast<size_t>(n - self->lo)].dim(x); };
  cx.column = [self, x](int n, uint64_t j) {
    const size_t k = static_cast<size_t>(n - self->lo);
    if (k == 0) return FVec(self->terms[0].field(), 0);
    return self->diffs[k].at(x).column(j);
  };
  return cx;
}

std::vector<size_t> homology_dims(const FunChainCx& cx, int n, const Caps& caps) {
  std::vector<size_t> out;
  const size_t nobj = cx.terms.at(0).cat().num_objects();
  for (ObjId x = 0; x < nobj; ++x) out.push_back(homology(cx.at(x), n, caps).dim);
  return out;
}

ValidationReport check_d2(const FunChainCx& cx) {
  ValidationReport rep;
  rep.policy = "exact, every object";
  if (cx.terms.empty()) return rep;
  const size_t nobj = cx.terms[0].cat().num_objects();
  for (size_t k = 1; k + 1 < cx.terms.size(); ++k)
    for (ObjId x = 0; x < nobj; ++x) {
      ++rep.checks;
      if (!(cx.diffs[k].at(x) * cx.diffs[k + 1].at(x)).is_zero()) {
        rep.ok = false;
        rep.failure = "d^2 != 0 in degree " + std::to_string(cx.lo + static_cast<int>(k)) + " at object " +
                      cx.terms[0].cat().object_name(x);
        return rep;
      }
    }
  return rep;
}

// ---- free functors and presentations

std::pair<size_t, HomIdx> FreeFunctor::locate(ObjId u, uint64_t b) const {
  const auto& off = offsets[u];
  const auto it = std::upper_bound(off.begin(), off.end(), b);
  const size_t j = static_cast<size_t>(it - off.begin()) - 1;
  return {j, b - off[j]};
}

FreeFunctor free_functor(const FinCat& c, std::vector<ObjId> gens, uint32_t p) {
  FreeFunctor out;
  const size_t nobj = c.num_objects();
  auto offsets = std::make_shared<std::vector<std::vector<uint64_t>>>(nobj);
  std::vector<size_t> dims(nobj);
  for (ObjId u = 0; u < nobj; ++u) {
    auto& off = (*offsets)[u];
    off.reserve(gens.size() + 1);
    uint64_t acc = 0;
    for (ObjId t : gens) {
      off.push_back(acc);
      acc += c.hom_size(t, u);
    }
    off.push_back(acc);
    dims[u] = acc;
  }
  std::string label;
  for (ObjId t : gens) label += (label.empty() ? "" : "+") + std::string("P(") + c.object_name(t) + ")";
  if (label.empty()) label = "0";
  auto g = std::make_shared<const std::vector<ObjId>>(gens);
  out.rep = FunRep::set_like(c, p, std::move(dims),
                             [c, offsets, g](const Mor& f, uint64_t b) {
                               const auto& off = (*offsets)[f.src];
                               const auto it = std::upper_bound(off.begin(), off.end(), b);
                               const size_t j = static_cast<size_t>(it - off.begin()) - 1;
                               const Mor h{(*g)[j], f.src, b - off[j]};
                               return (*offsets)[f.dst][j] + c.compose(f, h).idx;
                             },
                             label);
  out.gens = std::move(gens);
  out.offsets = *offsets;
  return out;
}

NatTrans generator_map(const FreeFunctor& cover, const FunRep& ambient, std::vector<FVec> vectors) {
  if (vectors.size() != cover.gens.size()) throw ArgumentError("generator_map: one vector per generator required");
  auto gens = std::make_shared<const std::vector<ObjId>>(cover.gens);
  auto vecs = std::make_shared<const std::vector<FVec>>(std::move(vectors));
  auto offsets = std::make_shared<const std::vector<std::vector<uint64_t>>>(cover.offsets);
  return NatTrans(cover.rep, ambient, [ambient, gens, vecs, offsets](ObjId u) {
    FMat m(ambient.field(), ambient.dim(u), (*offsets)[u].back());
    for (size_t j = 0; j < gens->size(); ++j) {
      const ObjId s = (*gens)[j];
      const HomIdx n = ambient.cat().hom_size(s, u);
      for (HomIdx h = 0; h < n; ++h) m.set_column((*offsets)[u][j] + h, ambient.apply(Mor{s, u, h}, (*vecs)[j]));
    }
    return m;
  });
}

CoverStage greedy_cover(const FunRep& ambient, const std::vector<size_t>& target_dims,
                        const std::function<EchelonBasis(ObjId)>& target_basis, const std::vector<ObjId>& sweep,
                        bool want_kernel, bool prune, const Caps& caps) {
  CoverStage st;
  st.ambient = ambient;
  st.target_dims = target_dims;
  const FinCat& c = ambient.cat();
  const uint32_t p = ambient.field();
  const size_t nobj = c.num_objects();
  if (target_dims.size() != nobj) throw ArgumentError("greedy_cover: one target dimension per object required");

  for (ObjId t : sweep) {
    if (target_dims[t] == 0) continue;
    const EchelonBasis x = target_basis(t);
    if (x.dim() != target_dims[t]) throw InvariantViolation("greedy_cover: target basis has the wrong dimension");
    EchelonBasis span(p, ambient.dim(t));
    auto absorb = [&](ObjId s, const FVec& w) {
      const HomIdx n = c.hom_size(s, t);
      if (n > caps.enumeration) throw CapExceeded("greedy_cover: Hom(" + c.object_name(s) + "," + c.object_name(t) + ")",
                                                  n, caps.enumeration);
      for (HomIdx h = 0; h < n && span.dim() < x.dim(); ++h) span.insert(ambient.apply(Mor{s, t, h}, w));
    };
    for (size_t j = 0; j < st.gen_objects.size() && span.dim() < x.dim(); ++j)
      absorb(st.gen_objects[j], st.gen_vectors[j]);
    for (const FVec& v : x.basis()) {
      if (span.dim() == x.dim()) break;
      if (span.contains(v)) continue;
      st.gen_objects.push_back(t);
      st.gen_vectors.push_back(v);
      absorb(t, v);
    }
  }

  if (prune) {
    // Drop generators already in the subfunctor generated by the others, last first.
    std::vector<bool> keep(st.gen_objects.size(), true);
    for (size_t j = st.gen_objects.size(); j-- > 0;) {
      const ObjId t = st.gen_objects[j];
      EchelonBasis span(p, ambient.dim(t));
      bool covered = false;
      for (size_t k = 0; k < st.gen_objects.size() && !covered; ++k) {
        if (k == j || !keep[k]) continue;
        const HomIdx n = c.hom_size(st.gen_objects[k], t);
        for (HomIdx h = 0; h < n && span.dim() < target_dims[t]; ++h)
          span.insert(ambient.apply(Mor{st.gen_objects[k], t, h}, st.gen_vectors[k]));
        covered = span.contains(st.gen_vectors[j]);
      }
      if (covered) keep[j] = false;
    }
    std::vector<ObjId> objs;
    std::vector<FVec> vecs;
    for (size_t j = 0; j < keep.size(); ++j)
      if (keep[j]) {
        objs.push_back(st.gen_objects[j]);
        vecs.push_back(std::move(st.gen_vectors[j]));
      }
    st.gen_objects = std::move(objs);
    st.gen_vectors = std::move(vecs);
  }

  st.cover = free_functor(c, st.gen_objects, p);
  st.to_ambient = generator_map(st.cover, ambient, st.gen_vectors);
  const FunRep cover = st.cover.rep;

  st.ranks.resize(nobj);
  for (ObjId u = 0; u < nobj; ++u) {
    st.ranks[u] = rank(st.to_ambient.at(u));
    if (st.ranks[u] > target_dims[u]) throw InvariantViolation("greedy_cover: image leaves the target at " + c.object_name(u));
    if (st.ranks[u] < target_dims[u] && st.epi) {
      st.epi = false;
      st.failure_object = u;
    }
  }
  if (want_kernel) {
    std::vector<size_t> kd(nobj);
    for (ObjId u = 0; u < nobj; ++u) kd[u] = cover.dim(u) - st.ranks[u];
    const NatTrans map = st.to_ambient;
    st.kernel = subfunctor(cover, std::move(kd), [map](ObjId u) { return EchelonBasis::kernel_of(map.at(u)); },
                           "ker(" + cover.label() + ")");
  }
  return st;
}

std::vector<size_t> PresentationCert::multiplicities(size_t k) const {
  std::vector<size_t> m(functor.cat().num_objects(), 0);
  for (ObjId t : stages.at(k).gen_objects) ++m[t];
  return m;
}

PresentationCert present(const FunRep& f, size_t n, const PresentOptions& opts, const Caps& caps) {
  PresentationCert cert;
  cert.functor = f;
  const FinCat& c = f.cat();
  const uint32_t p = f.field();
  if (opts.allowed.empty()) {
    for (ObjId x = 0; x < c.num_objects(); ++x) cert.sweep.push_back(x);
  } else {
    cert.sweep = opts.allowed;
    std::sort(cert.sweep.begin(), cert.sweep.end());
    cert.sweep.erase(std::unique(cert.sweep.begin(), cert.sweep.end()), cert.sweep.end());
  }
  if (opts.reverse_sweep) std::reverse(cert.sweep.begin(), cert.sweep.end());

  for (size_t k = 0; k <= n; ++k) {
    const bool want_kernel = k < n || opts.last_kernel;
    try {
      if (k == 0) {
        cert.stages.push_back(greedy_cover(f, f.dims(), [f, p](ObjId t) { return full_space(p, f.dim(t)); },
                                           cert.sweep, want_kernel, opts.prune, caps));
      } else {
        const CoverStage& prev = cert.stages[k - 1];
        const NatTrans map = prev.to_ambient;
        cert.stages.push_back(greedy_cover(prev.cover.rep, prev.kernel.rep.dims(),
                                           [map](ObjId t) { return EchelonBasis::kernel_of(map.at(t)); }, cert.sweep,
                                           want_kernel, opts.prune, caps));
      }
    } catch (const CapExceeded& e) {
      throw CapExceeded("present, stage " + std::to_string(k) + ": " + e.what(), e.required(), e.cap());
    }
    if (!cert.stages.back().epi) {
      cert.complete = false;
      break;
    }
  }
  return cert;
}

ValidationReport recheck(const PresentationCert& cert) {
  ValidationReport rep;
  rep.policy = "exact, every object and stage";
  const FinCat& c = cert.functor.cat();
  for (size_t k = 0; k < cert.stages.size(); ++k) {
    const CoverStage& st = cert.stages[k];
    for (ObjId u = 0; u < c.num_objects(); ++u) {
      ++rep.checks;
      const FMat& d = st.to_ambient.at(u);
      size_t expected;
      if (k == 0) {
        expected = cert.functor.dim(u);
      } else {
        const FMat& prev = cert.stages[k - 1].to_ambient.at(u);
        if (!(prev * d).is_zero()) {
          rep.ok = false;
          rep.failure = "d^2 != 0 at stage " + std::to_string(k) + ", object " + c.object_name(u);
          return rep;
        }
        expected = prev.cols() - rank(prev);
      }
      if (rank(d) != expected) {
        rep.ok = false;
        rep.failure = "not exact at stage " + std::to_string(k) + ", object " + c.object_name(u);
        return rep;
      }
    }
  }
  return rep;
}

// ---- Ext from a projective resolution

ExtResult ext_functorcat(const FunRep& f, const FunRep& g, size_t i_max, const PresentOptions& opts,
                         const Caps& caps) {
  if (!f.cat().same_as(g.cat()) || f.field() != g.field())
    throw ArgumentError("ext_functorcat: functors live on different categories or fields");
  PresentOptions o = opts;
  o.last_kernel = false;
  const PresentationCert cert = present(f, i_max + 1, o, caps);
  if (!cert.complete) throw InvariantViolation("ext_functorcat: the sweep does not generate the functor");
  const uint32_t p = f.field();

  ExtResult res;
  res.method = "greedy projective resolution";
  std::vector<std::vector<size_t>> off(cert.stages.size());
  for (size_t k = 0; k < cert.stages.size(); ++k) {
    size_t acc = 0;
    for (ObjId t : cert.stages[k].gen_objects) {
      off[k].push_back(acc);
      acc += g.dim(t);
    }
    res.cochain_dims.push_back(acc);
  }
  std::vector<FMat> delta;
  for (size_t k = 0; k <= i_max; ++k) {
    const CoverStage& src = cert.stages[k];
    const CoverStage& dst = cert.stages[k + 1];
    FMat d(p, res.cochain_dims[k + 1], res.cochain_dims[k]);
    for (size_t jj = 0; jj < dst.gen_objects.size(); ++jj) {
      const ObjId t = dst.gen_objects[jj];
      detail::for_each_nonzero(dst.gen_vectors[jj], [&](size_t b, uint32_t coef) {
        const auto [j, h] = src.cover.locate(t, b);
        add_block(d, off[k + 1][jj], off[k][j], g.act(Mor{src.gen_objects[j], t, h}), coef);
      });
    }
    res.ranks.push_back(rank(d));
    delta.push_back(std::move(d));
  }
  for (size_t k = 0; k + 1 < delta.size(); ++k) {
    ++res.d2_checks;
    if (!(delta[k + 1] * delta[k]).is_zero())
      throw InvariantViolation("ext_functorcat: delta^" + std::to_string(k + 1) + " delta^" + std::to_string(k) + " != 0");
  }
  for (size_t k = 0; k <= i_max; ++k)
    res.dims.push_back(res.cochain_dims[k] - res.ranks[k] - (k > 0 ? res.ranks[k - 1] : 0));
  return res;
}

// ---- Ext from the cobar complex

namespace {

using Emit = std::function<void(size_t row, const std::vector<ObjId>&, const std::vector<HomIdx>&, uint64_t, uint32_t)>;

// Rows of delta^n at the coordinates of one string x_0 -> ... -> x_{n+1}:
//   (delta c)(a_1..a_{n+1}) = G(a_{n+1}) c(a_1..a_n)
//                           + sum_i (-1)^i c(.., a_{i+1} a_i, ..)
//                           + (-1)^{n+1} c(a_2..a_{n+1}) F(a_1).
// Row r * dim F(x_0) + col is the (r, col) entry; emitted terms name a string of
// length n and an inner index in the same layout.
void cobar_rows(const FunRep& f, const FunRep& g, size_t n, const ObjId* objs, const HomIdx* arrows, const Emit& emit) {
  const FinCat& c = f.cat();
  const uint32_t p = f.field();
  const size_t df0 = f.dim(objs[0]), dg = g.dim(objs[n + 1]);
  if (df0 == 0 || dg == 0) return;
  std::vector<ObjId> o(n + 1);
  std::vector<HomIdx> a(n);

  std::copy(objs, objs + n + 1, o.begin());
  std::copy(arrows, arrows + n, a.begin());
  const size_t dgn = g.dim(objs[n]);
  if (dgn) {
    const FMat gm = g.act(Mor{objs[n], objs[n + 1], arrows[n]});
    for (size_t r = 0; r < dg; ++r)
      for (size_t k = 0; k < dgn; ++k)
        if (const uint32_t v = gm.get(r, k))
          for (size_t col = 0; col < df0; ++col) emit(r * df0 + col, o, a, k * df0 + col, v);
  }

  for (size_t i = 1; i <= n; ++i) {
    size_t w = 0;
    for (size_t k = 0; k <= n + 1; ++k)
      if (k != i) o[w++] = objs[k];
    w = 0;
    for (size_t k = 0; k < n + 1; ++k) {
      if (k == i - 1) {
        a[w++] = c.compose(Mor{objs[i], objs[i + 1], arrows[i]}, Mor{objs[i - 1], objs[i], arrows[i - 1]}).idx;
        ++k;
      } else {
        a[w++] = arrows[k];
      }
    }
    const uint32_t s = sign(p, i);
    for (size_t r = 0; r < dg * df0; ++r) emit(r, o, a, r, s);
  }

  const size_t df1 = f.dim(objs[1]);
  if (df1) {
    std::copy(objs + 1, objs + n + 2, o.begin());
    std::copy(arrows + 1, arrows + n + 1, a.begin());
    const FMat fm = f.act(Mor{objs[0], objs[1], arrows[0]});
    const uint32_t s = sign(p, n + 1);
    for (size_t k = 0; k < df1; ++k)
      for (size_t col = 0; col < df0; ++col)
        if (const uint32_t v = fm.get(k, col))
          for (size_t r = 0; r < dg; ++r) emit(r * df0 + col, o, a, r * df1 + k, v * s % p);
  }
}

}  // namespace

ExtResult ext_bar(const FunRep& f, const FunRep& g, size_t i_max, const Caps& caps) {
  if (!f.cat().same_as(g.cat()) || f.field() != g.field())
    throw ArgumentError("ext_bar: functors live on different categories or fields");
  const FinCat& c = f.cat();
  const uint32_t p = f.field();
  auto weight = [&](ObjId first, ObjId last) { return static_cast<uint64_t>(g.dim(last)) * f.dim(first); };
  std::vector<StringIndex> idx;
  for (size_t n = 0; n <= i_max + 1; ++n) idx.emplace_back(c, n, weight, caps);

  ExtResult res;
  res.method = "cobar complex";
  for (const auto& ix : idx) res.cochain_dims.push_back(ix.total());

  for (size_t n = 0; n <= i_max; ++n) {
    const StringIndex& src = idx[n];
    const size_t total = src.total();
    EchelonBasis e(p, total);
    std::vector<FVec> rows;
    idx[n + 1].for_each_string([&](const StringIndex::Block& b, const HomIdx* arrows, uint64_t) {
      if (e.dim() == total) return;
      rows.assign(b.weight, FVec(p, total));
      cobar_rows(f, g, n, b.objs.data(), arrows,
                 [&](size_t row, const std::vector<ObjId>& o, const std::vector<HomIdx>& a, uint64_t inner,
                     uint32_t coef) { rows[row].add_at(src.index(o.data(), a.data(), inner), coef); });
      for (FVec& r : rows) e.insert(std::move(r));
    });
    res.ranks.push_back(e.dim());
  }

  // delta^{n+1} delta^n = 0, row by row: exhaustive on small complexes, sampled otherwise.
  std::mt19937_64 rng(1);
  for (size_t n = 0; n + 1 <= i_max; ++n) {
    const StringIndex& low = idx[n];
    auto check_string = [&](const std::vector<ObjId>& objs, const std::vector<HomIdx>& arrows) {
      const size_t rows = f.dim(objs[0]) * g.dim(objs.back());
      std::vector<FVec> acc(rows, FVec(p, low.total()));
      cobar_rows(f, g, n + 1, objs.data(), arrows.data(),
                 [&](size_t row, const std::vector<ObjId>& o, const std::vector<HomIdx>& a, uint64_t inner,
                     uint32_t coef) {
                   cobar_rows(f, g, n, o.data(), a.data(),
                              [&](size_t row2, const std::vector<ObjId>& o2, const std::vector<HomIdx>& a2,
                                  uint64_t inner2, uint32_t coef2) {
                                if (row2 == inner) acc[row].add_at(low.index(o2.data(), a2.data(), inner2), coef * coef2 % p);
                              });
                 });
      ++res.d2_checks;
      for (const FVec& v : acc)
        if (!v.is_zero()) throw InvariantViolation("ext_bar: delta^" + std::to_string(n + 1) + " delta^" + std::to_string(n) + " != 0");
    };
    std::vector<ObjId> objs(n + 3);
    std::vector<HomIdx> arrows(n + 2);
    {
      // Small complexes: every string of length n + 2.
      Caps small = caps;
      small.chain_dim = 1u << 12;
      try {
        StringIndex top(c, n + 2, [](ObjId, ObjId) { return uint64_t{1}; }, small);
        top.for_each_string([&](const StringIndex::Block& b, const HomIdx* ar, uint64_t) {
          std::copy(ar, ar + n + 2, arrows.begin());
          check_string(b.objs, arrows);
        });
        continue;
      } catch (const CapExceeded&) {
        res.d2_exhaustive = false;
      }
    }
    std::uniform_int_distribution<ObjId> obj(0, static_cast<ObjId>(c.num_objects() - 1));
    for (int s = 0, tries = 0; s < 200 && tries < 100000; ++tries) {
      bool ok = true;
      for (auto& x : objs) x = obj(rng);
      for (size_t k = 0; k + 1 < objs.size() && ok; ++k) {
        const HomIdx h = c.hom_size(objs[k], objs[k + 1]);
        if (h == 0) ok = false;
        else arrows[k] = std::uniform_int_distribution<HomIdx>(0, h - 1)(rng);
      }
      if (!ok) continue;
      check_string(objs, arrows);
      ++s;
    }
  }

  for (size_t k = 0; k <= i_max; ++k)
    res.dims.push_back(res.cochain_dims[k] - res.ranks[k] - (k > 0 ? res.ranks[k - 1] : 0));
  return res;
}

ExtResult ext_monoid(const FunRep& v, const FunRep& w, size_t i_max, const Caps& caps) {
  if (v.cat().num_objects() != 1) throw ArgumentError("ext_monoid: category has more than one object");
  ExtResult res = ext_bar(v, w, i_max, caps);
  res.method = "monoid bar resolution";
  return res;
}

// ---- Tor

ColumnComplex tor_complex(const FunRep& h, const FunRep& f, size_t top, const Caps& caps) {
  const FinCat c = f.cat();
  if (!h.cat().same_as(opposite(c)) || h.field() != f.field())
    throw ArgumentError("tor_complex: expected H on C^op and F on C over the same field");
  const uint32_t p = f.field();
  auto idx = std::make_shared<std::vector<StringIndex>>();
  for (size_t n = 0; n <= top; ++n)
    idx->emplace_back(c, n, [&](ObjId first, ObjId last) { return static_cast<uint64_t>(h.dim(last)) * f.dim(first); },
                      caps);
  ColumnComplex cx;
  cx.p = p;
  cx.lo = 0;
  cx.hi = static_cast<int>(top);
  cx.dim = [idx](int n) { return (*idx)[static_cast<size_t>(n)].total(); };
  cx.column = [idx, h, f, c, p](int n_, uint64_t j) {
    const size_t n = static_cast<size_t>(n_);
    if (n == 0) return FVec(p, 0);
    const StringIndex& src = (*idx)[n];
    const StringIndex& dst = (*idx)[n - 1];
    std::vector<HomIdx> arrows(n);
    uint64_t inner = 0;
    const StringIndex::Block& b = src.locate(j, arrows.data(), inner);
    const ObjId* objs = b.objs.data();
    const size_t df0 = f.dim(objs[0]);
    const uint64_t hi = inner / df0, fi = inner % df0;
    FVec out(p, dst.total());
    std::vector<ObjId> o(n);
    std::vector<HomIdx> a(n - 1);

    // i = 0: act with F(a_1) on the F(x_0) factor.
    std::copy(objs + 1, objs + n + 1, o.begin());
    std::copy(arrows.begin() + 1, arrows.end(), a.begin());
    const size_t df1 = f.dim(objs[1]);
    const FVec fv = f.apply(Mor{objs[0], objs[1], arrows[0]}, FVec::unit(p, df0, fi));
    detail::for_each_nonzero(fv, [&](size_t k, uint32_t v) { out.add_at(dst.index(o.data(), a.data(), hi * df1 + k), v); });

    for (size_t i = 1; i < n; ++i) {
      size_t w = 0;
      for (size_t k = 0; k <= n; ++k)
        if (k != i) o[w++] = objs[k];
      w = 0;
      for (size_t k = 0; k < n; ++k) {
        if (k == i - 1) {
          a[w++] = c.compose(Mor{objs[i], objs[i + 1], arrows[i]}, Mor{objs[i - 1], objs[i], arrows[i - 1]}).idx;
          ++k;
        } else {
          a[w++] = arrows[k];
        }
      }
      out.add_at(dst.index(o.data(), a.data(), inner), sign(p, i));
    }

    // i = n: act with H(a_n) on the H(x_n) factor (a_n read in C^op).
    std::copy(objs, objs + n, o.begin());
    std::copy(arrows.begin(), arrows.end() - 1, a.begin());
    const FVec hv = h.apply(Mor{objs[n], objs[n - 1], arrows[n - 1]}, FVec::unit(p, h.dim(objs[n]), hi));
    const uint32_t s = sign(p, n);
    detail::for_each_nonzero(hv, [&](size_t k, uint32_t v) {
      out.add_at(dst.index(o.data(), a.data(), k * df0 + fi), v * s % p);
    });
    return out;
  };
  return cx;
}

std::vector<size_t> tor_category(const FunRep& h, const FunRep& f, size_t i_max, const Caps& caps) {
  const ColumnComplex cx = tor_complex(h, f, i_max + 1, caps);
  std::vector<size_t> out;
  for (size_t i = 0; i <= i_max; ++i) out.push_back(homology(cx, static_cast<int>(i), caps).dim);
  return out;
}

// ---- Kunneth

std::vector<KunnethRow> kunneth_check(const FunRep& f, const FunRep& g, const FunRep& u, const FunRep& v,
                                      size_t i_max, const Caps& caps) {
  const ProductData pd = product(f.cat(), u.cat());
  const FunRep fu = external_tensor(f, u, pd);
  const FunRep gv = external_tensor(g, v, pd);
  const auto lhs = ext_functorcat(fu, gv, i_max, {}, caps).dims;
  const auto e1 = ext_functorcat(f, g, i_max, {}, caps).dims;
  const auto e2 = ext_functorcat(u, v, i_max, {}, caps).dims;
  std::vector<KunnethRow> out;
  for (size_t n = 0; n <= i_max; ++n) {
    KunnethRow r;
    r.degree = n;
    r.lhs = lhs[n];
    for (size_t a = 0; a <= n; ++a) r.rhs += e1[a] * e2[n - a];
    r.equal = r.lhs == r.rhs;
    out.push_back(r);
  }
  return out;
}

}  // namespace fonctex
