#include "fonctex/support.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "fonctex/error.hpp"
#include "fonctex/polyfun.hpp"

namespace fonctex {

namespace {

EchelonBasis full_space(uint32_t p, size_t n) {
  EchelonBasis b(p, n);
  for (size_t i = 0; i < n; ++i) b.insert(FVec::unit(p, n, i));
  return b;
}

// Some target basis vector at u outside the image of m.
std::optional<FVec> witness_at(const EchelonBasis& target, const FMat& m) {
  const EchelonBasis img = EchelonBasis::column_span(m);
  for (const FVec& v : target.basis())
    if (!img.contains(v)) return v;
  return std::nullopt;
}

}  // namespace

SupportSpec::SupportSpec(FinCat c, std::vector<ObjId> objs) : cat(std::move(c)), objects(std::move(objs)) {
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  if (objects.empty()) throw ArgumentError("support: D must be nonempty");
  for (ObjId x : objects)
    if (x >= cat.num_objects()) throw ArgumentError("support: object " + std::to_string(x) + " not in " + cat.spec());
}

SupportSpec SupportSpec::parse(const FinCat& c, const std::string& names) {
  std::vector<ObjId> objs;
  std::stringstream ss(names);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) continue;
    const auto x = c.find_object(tok);
    if (!x) throw UsageError("support: unknown object '" + tok + "' in " + c.spec());
    objs.push_back(*x);
  }
  if (objs.empty()) throw UsageError("support: empty object list");
  return SupportSpec(c, std::move(objs));
}

bool SupportSpec::contains(ObjId x) const { return std::binary_search(objects.begin(), objects.end(), x); }

std::string SupportSpec::describe() const {
  std::string s = "{";
  for (size_t k = 0; k < objects.size(); ++k) s += (k ? "," : "") + cat.object_name(objects[k]);
  return s + "}";
}

std::vector<ObjId> retract_closure(const SupportSpec& d, const Caps& caps) {
  const FinCat& c = d.cat;
  std::vector<ObjId> out;
  if (c.is_matrix()) {
    // A^a is a retract of A^b iff a <= b.
    size_t top = 0;
    for (ObjId s : d.objects) top = std::max(top, c.rank_of(s));
    for (ObjId x = 0; x < c.num_objects(); ++x)
      if (c.rank_of(x) <= top) out.push_back(x);
    return out;
  }
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    bool found = d.contains(x);
    for (ObjId s : d.objects) {
      if (found) break;
      for (const Mor& i : c.homs(x, s, caps.enumeration)) {
        for (const Mor& r : c.homs(s, x, caps.enumeration))
          if (c.compose(r, i) == c.id(x)) {
            found = true;
            break;
          }
        if (found) break;
      }
    }
    if (found) out.push_back(x);
  }
  return out;
}

CounitCover counit_cover(const FunRep& ambient, const std::vector<size_t>& target_dims,
                         const std::function<EchelonBasis(ObjId)>& target_basis, const SupportSpec& d,
                         const Caps& caps) {
  const FinCat& c = ambient.cat();
  if (!d.cat.same_as(c)) throw ArgumentError("counit_cover: support lives in another category");
  std::vector<ObjId> gens;
  std::vector<FVec> vecs;
  for (ObjId s : d.objects) {
    if (target_dims[s] == 0) continue;
    const EchelonBasis x = target_basis(s);
    for (const FVec& v : x.basis()) {
      gens.push_back(s);
      vecs.push_back(v);
    }
  }
  for (ObjId u = 0; u < c.num_objects(); ++u) {
    uint64_t total = 0;
    for (ObjId s : gens) total += c.hom_size(s, u);
    if (total > caps.chain_dim)
      throw CapExceeded("counit_cover: induced functor at " + c.object_name(u), total, caps.chain_dim);
  }
  CounitCover out;
  out.induced = free_functor(c, gens, ambient.field());
  out.counit = generator_map(out.induced, ambient, std::move(vecs));
  out.ranks.resize(c.num_objects());
  for (ObjId u = 0; u < c.num_objects(); ++u) {
    out.ranks[u] = rank(out.counit.at(u));
    if (out.ranks[u] < target_dims[u] && out.is_epi) {
      out.is_epi = false;
      out.failure_object = u;
    }
  }
  return out;
}

CounitCover counit_cover(const FunRep& f, const SupportSpec& d, const Caps& caps) {
  const uint32_t p = f.field();
  return counit_cover(f, f.dims(), [f, p](ObjId t) { return full_space(p, f.dim(t)); }, d, caps);
}

PsfResult check_psf(const FunRep& f, const SupportSpec& d, size_t n, const Caps& caps) {
  if (!d.cat.same_as(f.cat())) throw ArgumentError("check_psf: support lives in another category");
  PsfResult res;
  res.cert.n = n;
  res.cert.support = d;
  res.cert.generator_objects = retract_closure(d, caps);
  PresentOptions opts;
  opts.allowed = res.cert.generator_objects;
  opts.last_kernel = true;
  res.cert.presentation = present(f, n, opts, caps);
  const PresentationCert& pc = res.cert.presentation;
  const FinCat& c = f.cat();
  for (size_t k = 0; k < pc.stages.size(); ++k) {
    const CoverStage& st = pc.stages[k];
    PsfStage ps;
    ps.multiplicities = pc.multiplicities(k);
    ps.generators = st.num_generators();
    ps.epi = st.epi;
    if (st.kernel.rep) ps.kernel_dims = st.kernel.rep.dims();
    res.cert.stages.push_back(std::move(ps));
    if (!st.epi && !res.failure_stage) {
      res.failure_stage = k;
      res.failure_object = st.failure_object;
      const ObjId u = *st.failure_object;
      const EchelonBasis target = k == 0 ? full_space(f.field(), f.dim(u))
                                         : EchelonBasis::kernel_of(pc.stages[k - 1].to_ambient.at(u));
      res.witness = witness_at(target, st.to_ambient.at(u));
      if (!res.witness) throw InvariantViolation("check_psf: non-epi stage without a witness at " + c.object_name(u));
    }
  }
  res.holds = pc.complete && pc.stages.size() == n + 1;
  return res;
}

bool check_psf_counit(const FunRep& f, const SupportSpec& d, size_t n, const Caps& caps) {
  CounitCover cc = counit_cover(f, d, caps);
  for (size_t k = 0;; ++k) {
    if (!cc.is_epi) return false;
    if (k == n) return true;
    const NatTrans map = cc.counit;
    std::vector<size_t> kd;
    for (ObjId u = 0; u < f.cat().num_objects(); ++u) kd.push_back(cc.induced.rep.dim(u) - cc.ranks[u]);
    const FunRep next = cc.induced.rep;
    cc = counit_cover(next, kd, [map](ObjId t) { return EchelonBasis::kernel_of(map.at(t)); }, d, caps);
  }
}

ColumnComplex bar_support_complex(const FunRep& f, const SupportSpec& d, ObjId u, size_t top, const Caps& caps) {
  const FinCat& c = f.cat();
  if (!d.cat.same_as(c)) throw ArgumentError("bar_support_complex: support lives in another category");
  const uint32_t p = f.field();
  const SubcategoryData sub = full_subcategory(c, d.objects, caps);
  const FunRep fd = precompose(f, sub.inclusion);
  const FinCat dop = opposite(sub.cat);

  // k[C(i(-), u)] on D^op.
  std::vector<size_t> hd;
  for (ObjId x = 0; x < sub.cat.num_objects(); ++x) hd.push_back(c.hom_size(sub.objects[x], u));
  const CatFunctor incl = sub.inclusion;
  const FunRep hu = FunRep::set_like(dop, p, hd,
                                     [c, incl, u](const Mor& m, uint64_t b) {
                                       // m : s -> t in D^op is g : t -> s in D.
                                       const Mor g = incl.on_morphism(Mor{m.dst, m.src, m.idx});
                                       return c.compose(Mor{g.dst, u, b}, g).idx;
                                     },
                                     "k[C(-," + c.object_name(u) + ")]");
  const ColumnComplex tor = tor_complex(hu, fd, top, caps);

  auto offsets = std::make_shared<std::vector<uint64_t>>();
  uint64_t acc = 0;
  for (ObjId x = 0; x < sub.cat.num_objects(); ++x) {
    offsets->push_back(acc);
    acc += static_cast<uint64_t>(hu.dim(x)) * fd.dim(x);
  }
  offsets->push_back(acc);

  ColumnComplex cx;
  cx.p = p;
  cx.lo = -1;
  cx.hi = static_cast<int>(top);
  cx.dim = [tor, f, u](int n) { return n < 0 ? f.dim(u) : tor.dim(n); };
  const std::vector<ObjId> objs = sub.objects;
  cx.column = [tor, f, u, p, offsets, objs](int n, uint64_t j) {
    if (n < 0) return FVec(p, 0);
    if (n > 0) return tor.column(n, j);
    // Augmentation: v (x) h |-> F(h) v.
    const auto it = std::upper_bound(offsets->begin(), offsets->end(), j);
    const size_t x = static_cast<size_t>(it - offsets->begin()) - 1;
    const uint64_t inner = j - (*offsets)[x];
    const size_t dfx = f.dim(objs[x]);
    const uint64_t h = inner / dfx, fi = inner % dfx;
    return f.apply(Mor{objs[x], u, h}, FVec::unit(p, dfx, fi));
  };
  return cx;
}

bool bar_connectivity_oracle(const FunRep& f, const SupportSpec& d, size_t n, const Caps& caps) {
  const FinCat& c = f.cat();
  for (ObjId u = 0; u < c.num_objects(); ++u) {
    const ColumnComplex cx = bar_support_complex(f, d, u, n, caps);
    for (int k = -1; k < static_cast<int>(n); ++k)
      if (homology(cx, k, caps).dim != 0) return false;
  }
  return true;
}

PsfBoundReport psf_bound_check(const FunRep& f, size_t d, size_t i, const Caps& caps) {
  const FinCat& c = f.cat();
  PsfBoundReport rep;
  rep.label = f.label();
  rep.category = c.spec();
  rep.truncation = truncation_level(c);
  rep.d = d;
  rep.i = i;
  rep.support_rank = (i + 1) * d;
  if (rep.truncation < rep.support_rank + 1)
    throw ArgumentError("psf_bound_check: needs N >= " + std::to_string(rep.support_rank + 1) + ", got N = " +
                        std::to_string(rep.truncation));
  rep.degree = degree(f, d).degree;
  rep.degree_ok = rep.degree.has_value() && *rep.degree <= static_cast<int>(d);
  if (!rep.degree_ok) return rep;

  const SupportSpec main(c, {*c.object_of_rank(rep.support_rank)});
  rep.result = check_psf(f, main, i, caps);
  for (size_t m = 0; m < rep.support_rank; ++m) {
    const bool ok = check_psf(f, SupportSpec(c, {*c.object_of_rank(m)}), i, caps).holds;
    rep.probes.push_back({m, ok});
    if (ok && !rep.smallest_passing) rep.smallest_passing = m;
  }
  if (!rep.smallest_passing && rep.result.holds) rep.smallest_passing = rep.support_rank;
  return rep;
}

}  // namespace fonctex
