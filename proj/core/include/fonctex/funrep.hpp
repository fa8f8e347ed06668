#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fonctex/caps.hpp"
#include "fonctex/fincat.hpp"
#include "fonctex/linalg.hpp"

namespace fonctex {

/// A functor C -> F_p-Mod: a dimension per object and a matrix per morphism.
///
/// Matrices are produced on demand by an action rule rather than stored in a
/// table, so functors on categories with millions of morphisms stay cheap.
/// A set-like functor (linearization of a functor to finite sets) also exposes
/// the underlying basis map, which gives sparse application.
class FunRep {
 public:
  using Action = std::function<FMat(const Mor&)>;
  using Apply = std::function<FVec(const Mor&, const FVec&)>;
  using BasisMap = std::function<uint64_t(const Mor&, uint64_t)>;

  FunRep() = default;
  FunRep(FinCat cat, uint32_t p, std::vector<size_t> dims, Action action, std::string label);
  // As above with a cheaper rule for applying F(f) to a single vector.
  FunRep(FinCat cat, uint32_t p, std::vector<size_t> dims, Action action, Apply apply, std::string label);
  static FunRep set_like(FinCat cat, uint32_t p, std::vector<size_t> dims, BasisMap map, std::string label);
  static FunRep from_table(FinCat cat, uint32_t p, std::vector<size_t> dims, std::map<Mor, FMat> table,
                           std::string label);

  const FinCat& cat() const { return impl_->cat; }
  uint32_t field() const { return impl_->p; }
  size_t dim(ObjId x) const { return impl_->dims[x]; }
  const std::vector<size_t>& dims() const { return impl_->dims; }
  size_t total_dim() const;
  const std::string& label() const { return impl_->label; }
  bool is_set_like() const { return static_cast<bool>(impl_->basis); }
  bool is_zero() const;

  FMat act(const Mor& f) const;
  FVec apply(const Mor& f, const FVec& v) const;
  uint64_t basis_image(const Mor& f, uint64_t b) const { return impl_->basis(f, b); }

  // Deterministic hash of dims and a fixed sample of action matrices.
  std::string fingerprint() const;
  FunRep relabeled(std::string label) const;
  explicit operator bool() const { return impl_ != nullptr; }

 private:
  struct Impl {
    FinCat cat;
    uint32_t p = 2;
    std::vector<size_t> dims;
    Action action;
    Apply apply;
    BasisMap basis;
    std::string label;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Natural transformation: one matrix per object, possibly computed lazily.
class NatTrans {
 public:
  using Component = std::function<FMat(ObjId)>;
  NatTrans() = default;
  NatTrans(FunRep src, FunRep dst, std::vector<FMat> components);
  NatTrans(FunRep src, FunRep dst, Component component);

  const FunRep& src() const;
  const FunRep& dst() const;
  const FMat& at(ObjId x) const;
  FVec apply(ObjId x, const FVec& v) const { return at(x).apply(v); }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct SubResult {
  FunRep rep;
  NatTrans map;  // inclusion for kernel/image/subfunctor, projection for cokernel
};

/// Functor to finite sets, by set sizes and an element map.
struct SetFunRep {
  FinCat cat;
  std::vector<uint64_t> sizes;
  std::function<uint64_t(const Mor&, uint64_t)> map;
  std::string label;
};

// ---- validation

ValidationReport validate_funrep(const FunRep& f, uint64_t seed = 1, const Caps& caps = default_caps());
ValidationReport validate_nat(const NatTrans& eta, uint64_t seed = 1, const Caps& caps = default_caps());
ValidationReport validate_set_functor(const SetFunRep& rho, uint64_t seed = 1, const Caps& caps = default_caps());
bool is_iso(const NatTrans& eta);
// Every action matrix, keyed by morphism (small categories only).
std::map<Mor, FMat> tabulate(const FunRep& f, const Caps& caps = default_caps());
bool same_data(const FunRep& a, const FunRep& b, const Caps& caps = default_caps());

// ---- natural transformations

NatTrans identity_nat(const FunRep& f);
NatTrans zero_nat(const FunRep& src, const FunRep& dst);
NatTrans compose(const NatTrans& b, const NatTrans& a);
NatTrans inverse(const NatTrans& eta);
NatTrans nat_sum(const NatTrans& a, const NatTrans& b);
NatTrans nat_scaled(const NatTrans& a, uint32_t c);

// ---- constructions

FunRep constant_functor(const FinCat& c, uint32_t p, size_t dim = 1);
FunRep zero_functor(const FinCat& c, uint32_t p);
// P^t = k[C(t,-)], basis of P^t(u) indexed by C(t,u).
FunRep standard_projective(const FinCat& c, ObjId t, uint32_t p, const Caps& caps = default_caps());

// Basis of Nat(F, G) from the naturality equations, generated in canonical morphism order.
std::vector<NatTrans> hom_space(const FunRep& f, const FunRep& g, const Caps& caps = default_caps());

// Yoneda: Nat(P^t, F) <-> F(t).
FVec yoneda_to_vector(const NatTrans& eta, ObjId t);
NatTrans yoneda_from_vector(const FunRep& projective, ObjId t, const FunRep& f, const FVec& v);

SubResult kernel(const NatTrans& eta);
SubResult image(const NatTrans& eta);
SubResult cokernel(const NatTrans& eta);

// Objectwise subspace of f given by a basis provider; dims must be supplied.
// The provider must describe a subfunctor; the action checks membership.
SubResult subfunctor(const FunRep& f, std::vector<size_t> dims, std::function<EchelonBasis(ObjId)> basis,
                     std::string label);
// Objectwise quotient of f by a subfunctor given by a basis provider.
SubResult quotient(const FunRep& f, std::vector<size_t> dims, std::function<EchelonBasis(ObjId)> basis,
                   std::string label);

// Smallest subfunctor containing the seeds (object, vector).
SubResult subfunctor_generated(const FunRep& f, const std::vector<std::pair<ObjId, FVec>>& seeds,
                               const Caps& caps = default_caps());

FunRep tensor_pointwise(const FunRep& f, const FunRep& g);
// F boxtimes G on C x D; basis index i * dim G(u) + j.
FunRep external_tensor(const FunRep& f, const FunRep& g, const ProductData& cd);
FunRep precompose(const FunRep& f, const CatFunctor& phi);
FunRep linearize(const SetFunRep& rho, uint32_t p);
FunRep direct_sum(const FunRep& f, const FunRep& g);
FunRep direct_sum(const std::vector<FunRep>& fs, const FinCat& c, uint32_t p);
// P^a (x) P^b -> P^{a (+) b} in a category of free modules: (f, g) |-> [f g].
NatTrans projective_tensor_iso(const FinCat& c, ObjId a, ObjId b, uint32_t p);
// P^c boxtimes P^d -> P^{(c,d)} on C x D: (f, g) |-> (f, g).
NatTrans projective_external_iso(const ProductData& cd, ObjId c, ObjId d, uint32_t p);
// Pointwise linear dual, a functor on the opposite category.
FunRep dual(const FunRep& f);
// F'(f) = Q_y F(f) Q_x^{-1}; returns F' and the isomorphism F -> F' with components Q_x.
std::pair<FunRep, NatTrans> conjugate(const FunRep& f, std::vector<FMat> changes);

SetFunRep hom_set_functor(const FinCat& c, ObjId t);
SetFunRep set_product(const SetFunRep& a, const SetFunRep& b);
SetFunRep singleton_set_functor(const FinCat& c);

enum class SchurKind { Tensor, Exterior, Symmetric, Divided };
SchurKind parse_schur_kind(const std::string& name);
std::string schur_name(SchurKind kind);
FunRep schur_construction(const FunRep& f, SchurKind kind, size_t d, const Caps& caps = default_caps());

// The inclusion of the ring into Mod: A^n |-> F_p^n, f |-> f mod p (requires p | m).
FunRep identity_functor_rep(const FinCat& c, uint32_t p);

}  // namespace fonctex
