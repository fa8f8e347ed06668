#include <random>

#include "doctest.h"
#include "fonctex/error.hpp"
#include "fonctex/polyfun.hpp"
#include "fonctex/support.hpp"
#include "random_functor.hpp"

using namespace fonctex;

namespace {

FinCat p2() { return truncated_additive(FinRing(2), 2); }

std::vector<std::vector<ObjId>> nonempty_subsets(size_t n) {
  std::vector<std::vector<ObjId>> out;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<ObjId> s;
    for (ObjId x = 0; x < n; ++x)
      if (mask >> x & 1) s.push_back(x);
    out.push_back(s);
  }
  return out;
}

bool subset_of(const std::vector<ObjId>& a, const std::vector<ObjId>& b) {
  for (ObjId x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

std::vector<FunRep> sample_functors(const FinCat& c, uint64_t seed, int randoms) {
  const FunRep id = identity_functor_rep(c, 2);
  std::vector<FunRep> fs{constant_functor(c, 2), id, standard_projective(c, 1, 2),
                         schur_construction(id, SchurKind::Exterior, 2), schur_construction(id, SchurKind::Tensor, 2)};
  std::mt19937_64 rng(seed);
  for (int k = 0; k < randoms; ++k) fs.push_back(testkit::random_functor(rng, c, 2));
  return fs;
}

}  // namespace

TEST_CASE("support specs") {
  const FinCat c = p2();
  const SupportSpec d = SupportSpec::parse(c, "A2, A1,A2");
  CHECK(d.objects == std::vector<ObjId>{1, 2});
  CHECK(d.describe() == "{A1,A2}");
  CHECK_THROWS_AS(SupportSpec::parse(c, "A7"), UsageError);
  CHECK_THROWS_AS(SupportSpec(c, {}), ArgumentError);
  CHECK(retract_closure(SupportSpec(c, {1})) == std::vector<ObjId>{0, 1});

  // The generic search agrees with the rank rule.
  const FinCat m = monoid_category(FinRing(2), 2);
  CHECK(retract_closure(SupportSpec(m, {0})) == std::vector<ObjId>{0});
}

TEST_CASE("counit covers") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  for (ObjId s = 0; s < 4; ++s) {
    const CounitCover cc = counit_cover(standard_projective(c, s, 2), SupportSpec(c, {s}));
    CHECK(cc.is_epi);
    CHECK(cc.induced.gens.size() == c.hom_size(s, s));
  }
  const CounitCover k = counit_cover(constant_functor(c, 2), SupportSpec(c, {0}));
  CHECK(k.is_epi);
  CHECK(is_iso(k.counit));
  CHECK(counit_cover(identity_functor_rep(c, 2), SupportSpec(c, {1})).is_epi);
  const CounitCover l2 = counit_cover(schur_construction(identity_functor_rep(c, 2), SchurKind::Exterior, 2),
                                      SupportSpec(c, {1}));
  CHECK_FALSE(l2.is_epi);
  CHECK(l2.failure_object == ObjId{2});
}

TEST_CASE("check_psf on known instances") {
  const FinCat c4 = truncated_additive(FinRing(2), 4);
  for (size_t n = 0; n <= 2; ++n) {
    CHECK(check_psf(standard_projective(c4, 2, 2), SupportSpec(c4, {2}), n).holds);
    CHECK(check_psf(constant_functor(c4, 2), SupportSpec(c4, {0}), n).holds);
  }
  const PsfResult r = check_psf(identity_functor_rep(c4, 2), SupportSpec(c4, {2}), 1);
  CHECK(r.holds);
  CHECK(r.cert.stages.size() == 2);
  CHECK(r.cert.generator_objects == std::vector<ObjId>{0, 1, 2});
  CHECK(recheck(r.cert.presentation).ok);

  // Lambda^2 vanishes on A^1 but not on A^2.
  const FunRep l2 = schur_construction(identity_functor_rep(c4, 2), SchurKind::Exterior, 2);
  const PsfResult f = check_psf(l2, SupportSpec(c4, {1}), 0);
  CHECK_FALSE(f.holds);
  CHECK(f.failure_stage == size_t{0});
  CHECK(f.failure_object == ObjId{2});
  REQUIRE(f.witness.has_value());
  CHECK_FALSE(f.witness->is_zero());
}

TEST_CASE("greedy retract-closure covers agree with full counit iteration") {
  const FinCat c = p2();
  for (const FunRep& f : sample_functors(c, 3, 6))
    for (const auto& dset : nonempty_subsets(3))
      for (size_t n = 0; n <= 1; ++n) {
        const SupportSpec d(c, dset);
        CAPTURE(f.label());
        CAPTURE(d.describe());
        CAPTURE(n);
        CHECK(check_psf(f, d, n).holds == check_psf_counit(f, d, n));
      }
}

TEST_CASE("bar connectivity oracle") {
  const FinCat c = p2();
  for (ObjId s = 0; s < 3; ++s)
    for (size_t n = 0; n <= 2; ++n) CHECK(bar_connectivity_oracle(standard_projective(c, s, 2), SupportSpec(c, {s}), n));
  const FunRep l2 = schur_construction(identity_functor_rep(c, 2), SchurKind::Exterior, 2);
  CHECK_FALSE(bar_connectivity_oracle(l2, SupportSpec(c, {1}), 0));

  // Mandatory agreement instances.
  const SupportSpec d(c, {1});
  for (const FunRep& f : {identity_functor_rep(c, 2), constant_functor(c, 2), standard_projective(c, 1, 2)})
    for (size_t n = 0; n <= 1; ++n) {
      CAPTURE(f.label());
      CHECK(bar_connectivity_oracle(f, d, n) == check_psf(f, d, n).holds);
    }
}

TEST_CASE("bar oracle agrees with check_psf on random instances") {
  const FinCat c = p2();
  for (const FunRep& f : sample_functors(c, 17, 5))
    for (const auto& dset : nonempty_subsets(3))
      for (size_t n = 0; n <= 1; ++n) {
        const SupportSpec d(c, dset);
        CAPTURE(f.label());
        CAPTURE(d.describe());
        CAPTURE(n);
        CHECK(bar_connectivity_oracle(f, d, n) == check_psf(f, d, n).holds);
      }
}

TEST_CASE("support monotonicity on P_2(F_2)") {
  const FinCat c = p2();
  const auto subsets = nonempty_subsets(3);
  for (const FunRep& f : sample_functors(c, 29, 6))
    for (size_t n = 0; n <= 1; ++n) {
      std::vector<bool> verdict;
      for (const auto& s : subsets) verdict.push_back(check_psf(f, SupportSpec(c, s), n).holds);
      for (size_t a = 0; a < subsets.size(); ++a)
        for (size_t b = 0; b < subsets.size(); ++b)
          if (verdict[a] && subset_of(subsets[a], subsets[b])) {
            CAPTURE(f.label());
            CHECK(verdict[b]);
          }
    }
}

TEST_CASE("two out of three for short exact sequences") {
  const FinCat c = p2();
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const FunRep f = testkit::random_functor(rng, c, 2);
    const FunRep g = testkit::random_functor(rng, c, 2);
    const auto homs = hom_space(f, g);
    if (homs.empty()) continue;
    NatTrans eta = nat_scaled(homs[0], 0);
    for (const NatTrans& b : homs)
      if (rng() % 2) eta = nat_sum(eta, b);
    // 0 -> ker -> F -> im -> 0
    const FunRep k = kernel(eta).rep;
    const FunRep q = image(eta).rep;
    for (const auto& dset : nonempty_subsets(3)) {
      const SupportSpec d(c, dset);
      bool sf[3], sk[3], sq[3];
      for (size_t n = 0; n < 3; ++n) {
        sf[n] = check_psf(f, d, n).holds;
        sk[n] = check_psf(k, d, n).holds;
        sq[n] = check_psf(q, d, n).holds;
      }
      for (size_t n = 0; n <= 1; ++n) {
        if (sk[n] && sq[n]) CHECK(sf[n]);
        if (sf[n] && (n == 0 || sk[n - 1])) CHECK(sq[n]);
        if (sf[n] && sq[n + 1]) CHECK(sk[n]);
      }
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("difference functors inherit supports") {
  const FinCat c = truncated_additive(FinRing(2), 3);
  const FunRep id = identity_functor_rep(c, 2);
  for (const FunRep& f : {id, schur_construction(id, SchurKind::Tensor, 2)}) {
    const FunRep df = difference(f);
    for (size_t m = 0; m <= 2; ++m)
      for (size_t n = 0; n <= 1; ++n)
        if (check_psf(f, SupportSpec(c, {static_cast<ObjId>(m)}), n).holds) {
          CAPTURE(f.label());
          CHECK(check_psf(df, SupportSpec(df.cat(), {static_cast<ObjId>(m)}), n).holds);
        }
  }
}

TEST_CASE("polynomial bound on supports") {
  const FinCat c3 = truncated_additive(FinRing(2), 3);
  const FunRep id = identity_functor_rep(c3, 2);
  const PsfBoundReport r0 = psf_bound_check(id, 1, 0);
  CHECK(r0.degree_ok);
  CHECK(r0.result.holds);
  CHECK(r0.support_rank == 1);
  REQUIRE(r0.probes.size() == 1);
  CHECK_FALSE(r0.probes[0].holds);
  CHECK(r0.smallest_passing == size_t{1});

  const PsfBoundReport r1 = psf_bound_check(id, 1, 1);
  CHECK(r1.result.holds);

  const PsfBoundReport l2 = psf_bound_check(schur_construction(id, SchurKind::Exterior, 2), 2, 0);
  CHECK(l2.result.holds);

  // A claimed degree below the true one is refused before any support check.
  const PsfBoundReport bad = psf_bound_check(schur_construction(id, SchurKind::Tensor, 2), 1, 0);
  CHECK_FALSE(bad.degree_ok);
  CHECK_THROWS_AS(psf_bound_check(id, 1, 2), ArgumentError);
}
