#include "fonctex/polyfun.hpp"

#include <algorithm>
#include <numeric>

#include "fonctex/error.hpp"

namespace fonctex {

namespace {

// Block matrix of the idempotent that is the identity on the listed summands and zero elsewhere.
RMat summand_idempotent(const FinRing& ring, const std::vector<size_t>& ranks, const std::vector<bool>& keep) {
  const size_t n = std::accumulate(ranks.begin(), ranks.end(), size_t{0});
  RMat m(ring, n, n);
  size_t pos = 0;
  for (size_t i = 0; i < ranks.size(); ++i) {
    if (keep[i])
      for (size_t k = 0; k < ranks[i]; ++k) m.set(pos + k, pos + k, 1);
    pos += ranks[i];
  }
  return m;
}

FinCat lower_truncation(const FinCat& pn) {
  const size_t n = truncation_level(pn);
  if (n == 0) throw ArgumentError("the truncation level is 0: there is no P_{N-1}");
  return truncated_additive(pn.matrix().ring, n - 1);
}

}  // namespace

size_t truncation_level(const FinCat& c) {
  if (!c.is_matrix() || c.spec().rfind("PN(", 0) != 0)
    throw ArgumentError(c.spec() + " is not a truncated category of free modules");
  const auto& ranks = c.matrix().ranks;
  for (size_t i = 0; i < ranks.size(); ++i)
    if (ranks[i] != i) throw ArgumentError(c.spec() + " is not a truncated category of free modules");
  return ranks.size() - 1;
}

CatFunctor shift_functor(const FinCat& pn) {
  const FinCat low = lower_truncation(pn);
  const FinRing ring = pn.matrix().ring;
  std::vector<ObjId> objs;
  for (ObjId x = 0; x < low.num_objects(); ++x) objs.push_back(x + 1);
  return CatFunctor(low, pn, std::move(objs),
                    [low, pn, ring](const Mor& f) {
                      const RMat m = block_diag(low.payload(f), RMat::identity(ring, 1));
                      return pn.morphism(f.src + 1, f.dst + 1, m).idx;
                    },
                    "-+A");
}

CatFunctor truncation_inclusion(const FinCat& pn) {
  const FinCat low = lower_truncation(pn);
  std::vector<ObjId> objs;
  for (ObjId x = 0; x < low.num_objects(); ++x) objs.push_back(x);
  return CatFunctor(low, pn, std::move(objs), [](const Mor& f) { return f.idx; }, "incl");
}

FunRep shift(const FunRep& f) { return precompose(f, shift_functor(f.cat())).relabeled("Sh(" + f.label() + ")"); }

DifferenceData difference_data(const FunRep& f) {
  const FinCat& pn = f.cat();
  DifferenceData d;
  d.shifted = shift(f);
  d.restricted = precompose(f, truncation_inclusion(pn)).relabeled(f.label());
  const FinRing ring = pn.matrix().ring;
  d.projection = NatTrans(d.shifted, d.restricted, [f, pn, ring](ObjId x) {
    RMat pi(ring, x, x + 1);
    for (size_t i = 0; i < x; ++i) pi.set(i, i, 1);
    return f.act(pn.morphism(x + 1, x, pi));
  });
  const SubResult k = kernel(d.projection);
  d.rep = k.rep.relabeled("Delta(" + f.label() + ")");
  d.inclusion = k.map;
  return d;
}

FunRep difference(const FunRep& f) { return difference_data(f).rep; }

DegreeReport degree(const FunRep& f, size_t window) {
  DegreeReport rep;
  rep.label = f.label();
  rep.fingerprint = f.fingerprint();
  rep.category = f.cat().spec();
  rep.window = window;
  rep.truncation = truncation_level(f.cat());
  if (rep.truncation < window + 1)
    throw ArgumentError("degree: window " + std::to_string(window) + " needs truncation N >= " + std::to_string(window + 1) +
                     ", got N = " + std::to_string(rep.truncation));
  FunRep cur = f;
  for (size_t j = 0; j <= window + 1; ++j) {
    if (j > 0) cur = difference(cur);
    rep.levels.push_back(cur.dims());
    if (cur.is_zero()) {
      rep.degree = static_cast<int>(j) - 1;
      break;
    }
  }
  const std::string qual = " (window " + std::to_string(window) + ", N = " + std::to_string(rep.truncation) + ")";
  if (rep.degree) {
    rep.verdict = *rep.degree < 0 ? "zero functor" + qual : "degree " + std::to_string(*rep.degree) + qual;
  } else {
    rep.verdict = "exceeds window: Delta^j F != 0 for all j <= " + std::to_string(window + 1) + qual;
  }
  return rep;
}

CrossEffect cross_effect(const FunRep& f, const std::vector<size_t>& ranks) {
  const FinCat& c = f.cat();
  truncation_level(c);
  const size_t total = std::accumulate(ranks.begin(), ranks.end(), size_t{0});
  const auto obj = c.object_of_rank(total);
  if (!obj) throw ArgumentError("cross_effect: A^" + std::to_string(total) + " is beyond the truncation");
  CrossEffect ce;
  ce.ranks = ranks;
  ce.object = *obj;
  const FinRing ring = c.matrix().ring;
  const uint32_t p = f.field();
  const size_t dim = f.dim(*obj);
  FMat stacked(p, 0, dim);
  for (size_t i = 0; i < ranks.size(); ++i) {
    std::vector<bool> keep(ranks.size(), true);
    keep[i] = false;
    const FMat m = f.act(c.morphism(*obj, *obj, summand_idempotent(ring, ranks, keep)));
    stacked = vstack(stacked, m);
  }
  ce.space = ranks.empty() ? EchelonBasis::kernel_of(FMat(p, 0, dim)) : EchelonBasis::kernel_of(stacked);
  return ce;
}

std::optional<size_t> degree_by_cross_effects(const FunRep& f, size_t d_max) {
  const size_t n = truncation_level(f.cat());
  for (size_t d = 0; d <= d_max; ++d) {
    const size_t k = d + 1;  // number of variables
    if (k > n) return std::nullopt;
    // Every tuple of k positive ranks with sum <= n.
    bool vanishes = true;
    std::vector<size_t> r(k, 1);
    for (;;) {
      if (cross_effect(f, r).dim() != 0) {
        vanishes = false;
        break;
      }
      size_t i = k;
      bool advanced = false;
      while (i-- > 0) {
        ++r[i];
        if (std::accumulate(r.begin(), r.end(), size_t{0}) <= n) {
          advanced = true;
          break;
        }
        r[i] = 1;
      }
      if (!advanced) break;
    }
    if (vanishes) return d;
  }
  return std::nullopt;
}

SymmetricRep top_cross_effect_sym(const FunRep& f, size_t d) {
  if (d == 0 || d > 4) throw ArgumentError("top_cross_effect_sym: d must be between 1 and 4");
  const CrossEffect ce = cross_effect(f, std::vector<size_t>(d, 1));
  const FinCat& c = f.cat();
  const FinRing ring = c.matrix().ring;
  SymmetricRep rep;
  rep.d = d;
  rep.dim = ce.dim();
  std::vector<size_t> perm(d);
  std::iota(perm.begin(), perm.end(), size_t{0});
  do {
    RMat m(ring, d, d);
    for (size_t i = 0; i < d; ++i) m.set(perm[i], i, 1);
    const FMat act = f.act(c.morphism(ce.object, ce.object, m));
    FMat restricted(f.field(), rep.dim, rep.dim);
    for (size_t k = 0; k < rep.dim; ++k) {
      const FVec img = act.apply(ce.space.basis()[k]);
      if (!ce.space.contains(img)) throw InvariantViolation("top_cross_effect_sym: permutation leaves the cross-effect");
      const auto coords = ce.space.coordinates(img);
      for (size_t r = 0; r < rep.dim; ++r) restricted.set(r, k, coords[r]);
    }
    rep.perms.push_back(perm);
    rep.matrices.push_back(std::move(restricted));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return rep;
}

ProjectiveDifferenceIso difference_of_projective(const FinCat& pn, ObjId t, uint32_t p) {
  const DifferenceData d = difference_data(standard_projective(pn, t, p));
  const FinCat low = lower_truncation(pn);
  if (t >= low.num_objects()) throw ArgumentError("difference_of_projective: object beyond P_{N-1}");
  const FinRing ring = pn.matrix().ring;
  const size_t i = pn.rank_of(t);
  const FunRep proj = standard_projective(low, t, p);
  const uint64_t count = hom_count(ring, 1, i);

  // Generators: [(id; a)] - [(id; 0)] in P^t(A^i (+) A), written in kernel coordinates.
  const FMat& incl = d.inclusion.at(t);
  RMat base(ring, i + 1, i);
  for (size_t k = 0; k < i; ++k) base.set(k, k, 1);
  const uint64_t zero_idx = pn.morphism(t, t + 1, base).idx;
  std::vector<NatTrans> parts;
  for (uint64_t a = 1; a < count; ++a) {
    const RMat row = RMat::from_index(ring, 1, i, a);
    RMat m = base;
    for (size_t k = 0; k < i; ++k) m.set(i, k, row.at(0, k));
    FVec x(p, incl.rows());
    x.add_at(pn.morphism(t, t + 1, m).idx, 1);
    x.add_at(zero_idx, p - 1);
    const auto coords = solve(incl, x.values());
    if (!coords) throw InvariantViolation("difference_of_projective: generator is not in the kernel");
    parts.push_back(yoneda_from_vector(proj, t, d.rep, FVec::from_values(p, *coords)));
  }
  std::vector<FunRep> copies(parts.size(), proj);
  const FunRep src = direct_sum(copies, low, p);
  ProjectiveDifferenceIso out;
  out.copies = parts.size();
  out.map = NatTrans(src, d.rep, [parts, p, d](ObjId x) {
    FMat m(p, d.rep.dim(x), 0);
    for (const NatTrans& part : parts) m = hstack(m, part.at(x));
    return m;
  });
  return out;
}

}  // namespace fonctex
