#include <random>

#include "doctest.h"
#include "fonctex/error.hpp"
#include "fonctex/homalg.hpp"
#include "frozen.hpp"
#include "oracle.hpp"
#include "random_functor.hpp"

using namespace fonctex;

namespace {

// Random complex C_0 <- C_1 <- C_2 <- C_3 with d^2 = 0: each d_n has rows in
// the left null space of d_{n+1}.
std::vector<FMat> random_complex(std::mt19937_64& rng, uint32_t p) {
  std::vector<size_t> dims{rng() % 6, 1 + rng() % 7, 1 + rng() % 7, 1 + rng() % 6};
  std::vector<FMat> d(4);
  d[0] = FMat(p, 0, dims[0]);
  d[3] = oracle::to_fmat(oracle::random_mat(rng, p, dims[2], dims[3]), p, dims[3]);
  for (int n = 2; n >= 1; --n) {
    const FMat left = kernel_basis(d[n + 1].transpose());  // columns y with y^T d_{n+1} = 0
    FMat m(p, dims[n - 1], dims[n]);
    for (size_t r = 0; r < m.rows(); ++r) {
      FVec row(p, dims[n]);
      for (size_t k = 0; k < left.cols(); ++k) row.axpy(static_cast<uint32_t>(rng() % p), left.column(k));
      m.set_row(r, row);
    }
    d[n] = m;
  }
  return d;
}

FunRep id2(const FinCat& c) { return identity_functor_rep(c, 2); }

}  // namespace

TEST_CASE("homology of trivial complexes") {
  const FMat i3 = FMat::identity(2, 3);
  const auto cx = dense_complex(2, 0, {FMat(2, 0, 3), i3});
  CHECK(homology(cx, 0).dim == 0);
  CHECK(homology(cx, 1).dim == 0);
  const auto zero = dense_complex(3, 0, {FMat(3, 0, 2), FMat(3, 2, 4), FMat(3, 4, 1)});
  CHECK(homology(zero, 0).dim == 2);
  CHECK(homology(zero, 1).dim == 4);
  CHECK(homology(zero, 2).dim == 1);
}

TEST_CASE("homology rank bookkeeping on random complexes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const uint32_t p = trial % 2 ? 3 : 2;
    const auto d = random_complex(rng, p);
    const auto cx = dense_complex(p, 0, d);
    for (int n = 0; n <= 3; ++n) {
      const HomologyData h = homology(cx, n);
      const size_t rk_n = n == 0 ? 0 : rank(d[n]);
      const size_t rk_next = n == 3 ? 0 : rank(d[n + 1]);
      CHECK(h.dim == cx.dim(n) - rk_n - rk_next);
      for (const FVec& z : h.classes.basis()) {
        CHECK(h.cycles.contains(z));
        CHECK_FALSE(h.is_boundary(z));
      }
      if (h.dim > 0) {
        const FVec& z = h.classes.basis()[0];
        auto coords = h.class_of(z);
        CHECK(coords[0] == 1);
      }
    }
  }
}

TEST_CASE("homology rejects d^2 != 0") {
  const FMat one = FMat::identity(2, 1);
  const auto cx = dense_complex(2, 0, {FMat(2, 0, 1), one, one});
  CHECK_THROWS_AS(homology(cx, 1), InvariantViolation);
}

TEST_CASE("presenting a standard projective") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  for (ObjId t = 0; t < 3; ++t) {
    const FunRep p = standard_projective(c, t, 2);
    const PresentationCert cert = present(p, 2);
    CHECK(cert.complete);
    CHECK(cert.stages[0].gen_objects == std::vector<ObjId>{t});
    for (ObjId u = 0; u < 3; ++u) CHECK(cert.stages[0].kernel.rep.dim(u) == 0);
    CHECK(cert.stages[1].num_generators() == 0);
    CHECK(recheck(cert).ok);
  }
}

TEST_CASE("presenting the constant functor") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  const PresentationCert cert = present(constant_functor(c, 2), 1);
  CHECK(cert.stages[0].gen_objects == std::vector<ObjId>{0});
  CHECK(cert.stages[1].num_generators() == 0);
  CHECK(recheck(cert).ok);
}

TEST_CASE("exterior square is generated at A2") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  const FunRep l2 = schur_construction(id2(c), SchurKind::Exterior, 2);
  const PresentationCert cert = present(l2, 0);
  CHECK(cert.complete);
  for (ObjId t : cert.stages[0].gen_objects) CHECK(t == 2);
  // Independent check: the subfunctor generated by Lambda2(A2) is everything.
  const SubResult s = subfunctor_generated(l2, {{2, FVec::unit(2, 1, 0)}});
  CHECK(s.rep.dims() == l2.dims());
  CHECK(recheck(cert).ok);
}

TEST_CASE("presentation certificates are exact and d^2 = 0") {
  std::mt19937_64 rng(41);
  const FinCat c = truncated_additive(FinRing(2), 2);
  for (int trial = 0; trial < 10; ++trial) {
    const FunRep f = testkit::random_functor(rng, c, 2);
    const PresentationCert cert = present(f, 2);
    CHECK(cert.complete);
    CHECK(recheck(cert).ok);
    FunChainCx cx;
    cx.lo = 0;
    for (size_t k = 0; k < cert.stages.size(); ++k) {
      cx.terms.push_back(cert.stages[k].cover.rep);
      cx.diffs.push_back(k == 0 ? NatTrans() : cert.stages[k].to_ambient);
    }
    CHECK(check_d2(cx).ok);
    // Exact in degrees 1 and 2 (the truncation leaves homology only at the top).
    for (ObjId x = 0; x < 3; ++x) CHECK(homology(cx.at(x), 1).dim == 0);
  }
}

TEST_CASE("a corrupted resolution fails the recheck") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  PresentationCert cert = present(id2(c), 1);
  CHECK(recheck(cert).ok);
  CoverStage& st = cert.stages[1];
  REQUIRE(st.num_generators() > 0);
  st.to_ambient = zero_nat(st.cover.rep, st.ambient);
  const ValidationReport r = recheck(cert);
  CHECK_FALSE(r.ok);
  CHECK(r.failure.find("not exact at stage 1") != std::string::npos);
  // An empty sweep cannot cover a nonzero functor.
  const CoverStage none = greedy_cover(id2(c), id2(c).dims(), [](ObjId) { return EchelonBasis(); }, {}, false);
  CHECK_FALSE(none.epi);
  CHECK(none.failure_object == ObjId{1});
}

TEST_CASE("Ext^0 is the space of natural transformations") {
  std::mt19937_64 rng(43);
  const FinCat c = truncated_additive(FinRing(2), 2);
  for (int trial = 0; trial < 20; ++trial) {
    const FunRep f = testkit::random_functor(rng, c, 2);
    const FunRep g = testkit::random_functor(rng, c, 2);
    CHECK(ext_functorcat(f, g, 0).dims[0] == hom_space(f, g).size());
  }
}

TEST_CASE("standard projectives have no higher Ext") {
  std::mt19937_64 rng(47);
  const FinCat c = truncated_additive(FinRing(2), 2);
  for (ObjId t = 0; t < 3; ++t) {
    const FunRep g = testkit::random_functor(rng, c, 2);
    const ExtResult e = ext_functorcat(standard_projective(c, t, 2), g, 2);
    CHECK(e.dims[0] == g.dim(t));
    CHECK(e.dims[1] == 0);
    CHECK(e.dims[2] == 0);
  }
}

TEST_CASE("Ext(Id, Id) on truncated categories matches the frozen values") {
  for (size_t n : {2u, 3u}) {
    const FinCat c = truncated_additive(FinRing(2), n);
    const ExtResult e = ext_functorcat(id2(c), id2(c), 1);
    const auto& want = n == 2 ? frozen::kExtIdIdP2 : frozen::kExtIdIdP3;
    CHECK(e.dims[0] == want[0]);
    CHECK(e.dims[1] == want[1]);
  }
  const FinCat c2 = truncated_additive(FinRing(2), 2);
  const ExtResult bar = ext_bar(id2(c2), id2(c2), 1);
  CHECK(bar.dims[0] == frozen::kExtIdIdP2[0]);
  CHECK(bar.dims[1] == frozen::kExtIdIdP2[1]);
}

TEST_CASE("the resolution and cobar routes agree") {
  std::mt19937_64 rng(53);
  const FinCat c = truncated_additive(FinRing(2), 1);
  for (int trial = 0; trial < 10; ++trial) {
    const FunRep f = testkit::random_functor(rng, c, 2);
    const FunRep g = testkit::random_functor(rng, c, 2);
    CHECK(ext_functorcat(f, g, 2).dims == ext_bar(f, g, 2).dims);
  }
}

TEST_CASE("Ext does not depend on the sweep order") {
  std::mt19937_64 rng(59);
  const FinCat c = truncated_additive(FinRing(2), 2);
  PresentOptions rev;
  rev.reverse_sweep = true;
  for (int trial = 0; trial < 10; ++trial) {
    const FunRep f = testkit::random_functor(rng, c, 2);
    const FunRep g = testkit::random_functor(rng, c, 2);
    CHECK(ext_functorcat(f, g, 2).dims == ext_functorcat(f, g, 2, rev).dims);
  }
}

TEST_CASE("monoid Ext") {
  for (size_t n : {1u, 2u}) {
    const FinCat m = monoid_category(FinRing(2), n);
    const FunRep v = id2(m);
    const ExtResult e = ext_monoid(v, v, 1);
    const auto& want = n == 1 ? frozen::kExtNaturalM1 : frozen::kExtNaturalM2;
    CHECK(e.dims[0] == want[0]);
    CHECK(e.dims[1] == want[1]);
    CHECK(e.d2_checks > 0);
    // Same answer through a projective resolution on the one-object category.
    CHECK(ext_functorcat(v, v, 1).dims == e.dims);
    // Free modules have no higher Ext.
    const ExtResult free = ext_monoid(standard_projective(m, 0, 2), v, 1);
    CHECK(free.dims[0] == v.dim(0));
    CHECK(free.dims[1] == 0);
  }
  CHECK_THROWS_AS(ext_monoid(id2(truncated_additive(FinRing(2), 1)), id2(truncated_additive(FinRing(2), 1)), 0),
                  ArgumentError);
}

TEST_CASE("Tor against representables") {
  std::mt19937_64 rng(61);
  const FinCat c = truncated_additive(FinRing(2), 2);
  const FinCat op = opposite(c);
  for (ObjId t = 0; t < 3; ++t) {
    const FunRep h = dual(testkit::random_functor(rng, c, 2));
    const auto tor = tor_category(h, standard_projective(c, t, 2), 1);
    CHECK(tor[0] == h.dim(t));
    CHECK(tor[1] == 0);
    const FunRep f = testkit::random_functor(rng, c, 2);
    const auto tor2 = tor_category(standard_projective(op, t, 2), f, 1);
    CHECK(tor2[0] == f.dim(t));
    CHECK(tor2[1] == 0);
  }
}

TEST_CASE("Tor is dual to Ext") {
  std::mt19937_64 rng(67);
  const FinCat c = truncated_additive(FinRing(2), 2);
  for (int trial = 0; trial < 10; ++trial) {
    const FunRep f = testkit::random_functor(rng, c, 2);
    const FunRep g = testkit::random_functor(rng, c, 2);
    const auto tor = tor_category(dual(g), f, 1);
    const auto ext = ext_functorcat(f, g, 1).dims;
    CHECK(tor == ext);
  }
}

TEST_CASE("Tor_0 is the coend") {
  std::mt19937_64 rng(71);
  const FinCat c = truncated_additive(FinRing(2), 2);
  for (int trial = 0; trial < 20; ++trial) {
    const FunRep h = dual(testkit::random_functor(rng, c, 2));
    const FunRep f = testkit::random_functor(rng, c, 2);
    // Quotient of (+)_x H(x) (x) F(x) by H(a) y (x) v - y (x) F(a) v for a : x -> z.
    std::vector<size_t> off;
    size_t total = 0;
    for (ObjId x = 0; x < 3; ++x) {
      off.push_back(total);
      total += h.dim(x) * f.dim(x);
    }
    EchelonBasis rel(2, total);
    for (ObjId x = 0; x < 3; ++x)
      for (ObjId z = 0; z < 3; ++z)
        for (const Mor& a : c.homs(x, z)) {
          const FMat ha = h.act(Mor{z, x, a.idx});
          const FMat fa = f.act(a);
          for (size_t y = 0; y < h.dim(z); ++y)
            for (size_t v = 0; v < f.dim(x); ++v) {
              FVec r(2, total);
              for (size_t k = 0; k < h.dim(x); ++k)
                if (ha.get(k, y)) r.add_at(off[x] + k * f.dim(x) + v, 1);
              for (size_t k = 0; k < f.dim(z); ++k)
                if (fa.get(k, v)) r.add_at(off[z] + y * f.dim(z) + k, 1);
              rel.insert(r);
            }
        }
    CHECK(tor_category(h, f, 0)[0] == total - rel.dim());
  }
}

TEST_CASE("Kunneth formula") {
  std::mt19937_64 rng(73);
  const FinCat c = truncated_additive(FinRing(2), 1);
  const FunRep pc = standard_projective(c, 1, 2), pd = standard_projective(c, 0, 2);
  const FunRep g = id2(c), v = constant_functor(c, 2);
  const auto rows = kunneth_check(pc, g, pd, v, 1);
  CHECK(rows[0].lhs == g.dim(1) * v.dim(0));
  CHECK(rows[1].lhs == 0);
  for (const auto& r : rows) CHECK(r.equal);
  for (int trial = 0; trial < 3; ++trial) {
    const FunRep f1 = testkit::random_functor(rng, c, 2), g1 = testkit::random_functor(rng, c, 2);
    const FunRep u1 = testkit::random_functor(rng, c, 2), v1 = testkit::random_functor(rng, c, 2);
    for (const auto& r : kunneth_check(f1, g1, u1, v1, 2)) CHECK(r.equal);
  }
}
