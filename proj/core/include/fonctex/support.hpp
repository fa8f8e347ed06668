#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fonctex/caps.hpp"
#include "fonctex/funrep.hpp"
#include "fonctex/homalg.hpp"

namespace fonctex {

/// A finite set D of objects of an ambient category.
struct SupportSpec {
  FinCat cat;
  std::vector<ObjId> objects;  // sorted, distinct

  SupportSpec() = default;
  SupportSpec(FinCat c, std::vector<ObjId> objs);
  // "A2" or "A1,A2".
  static SupportSpec parse(const FinCat& c, const std::string& names);
  bool contains(ObjId x) const;
  std::string describe() const;
};

// Objects x that are retracts of some s in D (r o i = id_x for i : x -> s, r : s -> x).
std::vector<ObjId> retract_closure(const SupportSpec& d, const Caps& caps = default_caps());

/// Q = (+)_{s in D} X(s)[C(s,-)] -> X for X a subfunctor of `ambient`, one
/// copy of P^s for each basis vector of X(s).
struct CounitCover {
  FreeFunctor induced;
  NatTrans counit;  // induced -> ambient, image inside X
  std::vector<size_t> ranks;
  bool is_epi = true;
  std::optional<ObjId> failure_object;
};
CounitCover counit_cover(const FunRep& f, const SupportSpec& d, const Caps& caps = default_caps());
// Counit onto the subfunctor X of `ambient` with the given dims and bases.
CounitCover counit_cover(const FunRep& ambient, const std::vector<size_t>& target_dims,
                         const std::function<EchelonBasis(ObjId)>& target_basis, const SupportSpec& d,
                         const Caps& caps = default_caps());

struct PsfStage {
  std::vector<size_t> multiplicities;  // generator count per object
  size_t generators = 0;
  bool epi = true;
  std::vector<size_t> kernel_dims;
};

struct PsfCertificate {
  size_t n = 0;
  SupportSpec support;
  std::vector<ObjId> generator_objects;  // the retract closure of D
  std::vector<PsfStage> stages;
  PresentationCert presentation;
};

struct PsfResult {
  bool holds = false;
  PsfCertificate cert;
  // On failure: first stage whose cover is not epi, an object there and a
  // vector of the stage target at that object outside the image.
  std::optional<size_t> failure_stage;
  std::optional<ObjId> failure_object;
  std::optional<FVec> witness;
};

// Does F admit an n-presentation by functors induced from D?
// Decided by n + 1 covers with generators in the retract closure of D.
PsfResult check_psf(const FunRep& f, const SupportSpec& d, size_t n, const Caps& caps = default_caps());
// Same question by iterating the full counit cover; tiny instances only.
bool check_psf_counit(const FunRep& f, const SupportSpec& d, size_t n, const Caps& caps = default_caps());

/// The augmented complex N^D_n(F) -> ... -> N^D_0(F) -> F evaluated at u, with
///   N^D_k(F)(u) = (+)_{x_0 -> ... -> x_k in D} F(x_0) (x) k[C(x_k, u)]
/// in degrees -1..top.
ColumnComplex bar_support_complex(const FunRep& f, const SupportSpec& d, ObjId u, size_t top,
                                  const Caps& caps = default_caps());
// True iff the augmented complex is acyclic in degrees -1..n-1 at every object.
bool bar_connectivity_oracle(const FunRep& f, const SupportSpec& d, size_t n, const Caps& caps = default_caps());

struct SharpnessProbe {
  size_t m = 0;  // support {A^m}
  bool holds = false;
};

struct PsfBoundReport {
  std::string label;
  std::string category;
  size_t truncation = 0;
  size_t d = 0;
  size_t i = 0;
  std::optional<int> degree;  // measured with window d
  bool degree_ok = false;
  size_t support_rank = 0;  // (i + 1) d
  PsfResult result;
  std::vector<SharpnessProbe> probes;  // m < (i + 1) d, ascending
  std::optional<size_t> smallest_passing;
};
// Checks deg F <= d, then F has support of i-presentation {A^{(i+1)d}};
// probes smaller supports as data. Requires N >= (i+1)d + 1.
PsfBoundReport psf_bound_check(const FunRep& f, size_t d, size_t i, const Caps& caps = default_caps());

}  // namespace fonctex
