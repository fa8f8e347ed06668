#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fonctex/caps.hpp"
#include "fonctex/funrep.hpp"
#include "fonctex/hochschild.hpp"

namespace fonctex {

inline constexpr const char* kVersion = "0.1.0";

/// Flat key/value experiment configuration. Text form is one "key = value"
/// per line, '#' starts a comment; serialize() writes keys in sorted order.
class ExperimentConfig {
 public:
  static const std::vector<std::string>& known_keys();

  static ExperimentConfig parse(std::string_view text);
  std::string serialize() const;

  // Throws UsageError on an unknown key or an invalid value.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  // Required key; UsageError when missing.
  std::string require(const std::string& key) const;
  uint64_t get_uint(const std::string& key, uint64_t fallback) const;
  uint64_t require_uint(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

  Caps caps() const;
  uint64_t seed() const { return get_uint("seed", 1); }

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) { return a.kv_ == b.kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

// Field used for a category: the "field" key if given, else the smallest prime dividing the ring modulus.
uint32_t default_field(const FinCat& c);

// Catalogue: const, Id, T2, T3, Lambda2, S2, Gamma2, P(<object>), Lin(<object>).
std::vector<std::string> builtin_functor_names();
FunRep builtin_functor(const std::string& name, const FinCat& c, uint32_t p);
// Catalogue: dualtensor, const, lmhh (with F and t), external (H = dual of U, F = V).
std::vector<std::string> builtin_bifunctor_names();

// "builtin:<name>" or a path to a functor file.
FunRep load_functor(const std::string& source, const FinCat& c, uint32_t p, uint64_t seed = 1,
                    const Caps& caps = default_caps());

/// Functor file: "fonctex-functor 1", then "category", "field", optional
/// "label", "dims", then one line per morphism in canonical order:
///   <src> <dst> <index> | <entries of the dim(dst) x dim(src) matrix, row-major>
std::string write_functor(const FunRep& f, const Caps& caps = default_caps());
FunRep read_functor(std::string_view text, const Caps& caps = default_caps());
FunRep read_functor_file(const std::string& path, const Caps& caps = default_caps());

struct RunOutcome {
  int exit_code = 0;
  std::string report;   // JSON document
  std::string csv;      // table, when the command produces one
  std::string summary;  // one human-readable line per verdict
};

// Exit codes: 0 pass, 1 usage, 2 cap exceeded, 3 invariant violation, 4 falsifier.
RunOutcome run(const ExperimentConfig& config);

}  // namespace fonctex
