#include "fonctex/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "fonctex/error.hpp"
#include "fonctex/homalg.hpp"
#include "fonctex/polyfun.hpp"
#include "fonctex/support.hpp"
#include "json.hpp"
#include "selftest.hpp"

namespace fonctex {

using Json = nlohmann::json;

namespace {

const std::set<std::string>& command_names() {
  static const std::set<std::string> names{"selftest", "degree", "psf", "present", "ext",
                                           "ext-compare", "hh", "hh-stab", "kunneth"};
  return names;
}

const std::set<std::string>& numeric_keys() {
  static const std::set<std::string> keys{"field", "n", "i", "d", "window", "imax", "nmax", "N",
                                          "seed", "enum_cap", "chain_cap", "validate_samples"};
  return keys;
}

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::optional<uint64_t> parse_uint(const std::string& s) {
  if (s.empty() || s.size() > 19) return std::nullopt;
  uint64_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
    v = v * 10 + static_cast<uint64_t>(ch - '0');
  }
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

// ---- configuration

const std::vector<std::string>& ExperimentConfig::known_keys() {
  static const std::vector<std::string> keys{
      "command", "cat",  "cat2",  "ring",   "field",  "functor", "target", "F",        "G",
      "U",       "V",    "t",     "support", "n",     "i",       "d",      "window",   "imax",
      "nmax",    "N",    "oracle", "method", "bifunctor", "out", "report", "seed",     "enum_cap",
      "chain_cap", "validate_samples"};
  return keys;
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw UsageError("unknown config key '" + key + "'");
  const std::string value = trim(raw);
  if (value.empty()) throw UsageError("empty value for '" + key + "'");
  if (value.find_first_of("\n\r#") != std::string::npos) throw UsageError("invalid character in value of '" + key + "'");
  if (numeric_keys().count(key)) {
    const auto v = parse_uint(value);
    if (!v) throw UsageError("'" + key + "' must be a non-negative integer, got '" + value + "'");
    if ((key == "enum_cap" || key == "chain_cap" || key == "validate_samples") && *v == 0)
      throw UsageError("cap '" + key + "' must be positive");
    if (key == "field" && !is_prime(*v)) throw UsageError("field must be a prime, got " + value);
  }
  if (key == "command" && !command_names().count(value)) throw UsageError("unknown command '" + value + "'");
  if (key == "ring") FinRing::parse(value);
  if (key == "oracle" && value != "none" && value != "bar") throw UsageError("oracle must be 'none' or 'bar'");
  kv_[key] = value;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const size_t h = line.find('#'); h != std::string::npos) line.resize(h);
    const std::string s = trim(line);
    if (s.empty()) continue;
    const size_t eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    if (cfg.has(key)) throw UsageError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.set(key, s.substr(eq + 1));
  }
  return cfg;
}

std::string ExperimentConfig::serialize() const {
  std::string out;
  for (const auto& [k, v] : kv_) out += k + " = " + v + "\n";
  return out;
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

std::string ExperimentConfig::require(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw UsageError("missing required key '" + key + "'");
  return it->second;
}

uint64_t ExperimentConfig::get_uint(const std::string& key, uint64_t fallback) const {
  return has(key) ? require_uint(key) : fallback;
}

uint64_t ExperimentConfig::require_uint(const std::string& key) const {
  const auto v = parse_uint(require(key));
  if (!v) throw UsageError("'" + key + "' must be a non-negative integer");
  return *v;
}

Caps ExperimentConfig::caps() const {
  Caps c;
  c.enumeration = get_uint("enum_cap", c.enumeration);
  c.chain_dim = get_uint("chain_cap", c.chain_dim);
  c.sampled_checks = get_uint("validate_samples", c.sampled_checks);
  return c;
}

// ---- builtins

uint32_t default_field(const FinCat& c) {
  if (!c.is_matrix()) return 2;
  const uint32_t m = c.matrix().ring.modulus();
  if (m < 2) throw UsageError("the zero ring has no residue field; set 'field'");
  for (uint32_t q = 2; q * q <= m; ++q)
    if (m % q == 0) return q;
  return m;
}

std::vector<std::string> builtin_functor_names() {
  return {"const", "Id", "T2", "T3", "Lambda2", "S2", "Gamma2", "P(<object>)", "Lin(<object>)"};
}

std::vector<std::string> builtin_bifunctor_names() { return {"dualtensor", "const", "lmhh", "external"}; }

namespace {

std::optional<std::string> bracket_arg(const std::string& name, const std::string& head) {
  if (name.size() > head.size() + 2 && name.rfind(head + "(", 0) == 0 && name.back() == ')')
    return name.substr(head.size() + 1, name.size() - head.size() - 2);
  return std::nullopt;
}

ObjId object_or_usage(const FinCat& c, const std::string& name) {
  const auto x = c.find_object(name);
  if (!x) throw UsageError("unknown object '" + name + "' in " + c.spec());
  return *x;
}

void require_field_divides(const FinCat& c, uint32_t p, const std::string& name) {
  if (!c.is_matrix()) throw UsageError("builtin:" + name + " needs a category of free modules");
  if (c.matrix().ring.modulus() % p != 0)
    throw UsageError("builtin:" + name + ": field " + std::to_string(p) + " is not a quotient of " +
                     c.matrix().ring.spec());
}

}  // namespace

FunRep builtin_functor(const std::string& name, const FinCat& c, uint32_t p) {
  if (!is_prime(p)) throw UsageError("field must be prime");
  FunRep f;
  static const std::map<std::string, std::pair<SchurKind, size_t>> schur{{"T2", {SchurKind::Tensor, 2}},
                                                                       {"T3", {SchurKind::Tensor, 3}},
                                                                       {"Lambda2", {SchurKind::Exterior, 2}},
                                                                       {"S2", {SchurKind::Symmetric, 2}},
                                                                       {"Gamma2", {SchurKind::Divided, 2}}};
  if (name == "const") {
    f = constant_functor(c, p);
  } else if (name == "Id") {
    require_field_divides(c, p, name);
    f = identity_functor_rep(c, p);
  } else if (const auto it = schur.find(name); it != schur.end()) {
    require_field_divides(c, p, name);
    f = schur_construction(identity_functor_rep(c, p), it->second.first, it->second.second);
  } else if (const auto t = bracket_arg(name, "P")) {
    f = standard_projective(c, object_or_usage(c, *t), p);
  } else if (const auto t = bracket_arg(name, "Lin")) {
    f = linearize(hom_set_functor(c, object_or_usage(c, *t)), p);
  } else {
    throw UsageError("unknown builtin functor '" + name + "'");
  }
  f = f.relabeled(name);
  const ValidationReport v = validate_funrep(f);
  if (!v.ok) throw InvariantViolation("builtin:" + name + " failed validation: " + v.failure);
  return f;
}

FunRep load_functor(const std::string& source, const FinCat& c, uint32_t p, uint64_t seed, const Caps& caps) {
  if (source.rfind("builtin:", 0) == 0) return builtin_functor(source.substr(8), c, p);
  const FunRep f = read_functor_file(source, caps);
  if (f.cat().spec() != c.spec())
    throw UsageError(source + ": functor lives on " + f.cat().spec() + ", expected " + c.spec());
  if (f.field() != p) throw UsageError(source + ": field " + std::to_string(f.field()) + ", expected " + std::to_string(p));
  const ValidationReport v = validate_funrep(f, seed, caps);
  if (!v.ok) throw InvariantViolation(source + ": not a functor: " + v.failure);
  return f;
}

// ---- functor files

std::string write_functor(const FunRep& f, const Caps& caps) {
  const FinCat& c = f.cat();
  std::ostringstream out;
  out << "fonctex-functor 1\n";
  out << "category " << c.spec() << "\n";
  out << "field " << f.field() << "\n";
  if (!f.label().empty() && f.label().find_first_of(" \t\n") == std::string::npos) out << "label " << f.label() << "\n";
  out << "dims";
  for (size_t d : f.dims()) out << " " << d;
  out << "\n# src dst index | matrix entries, row-major\n";
  for (ObjId s = 0; s < c.num_objects(); ++s)
    for (ObjId t = 0; t < c.num_objects(); ++t)
      for (const Mor& m : c.homs(s, t, caps.enumeration)) {
        const FMat a = f.act(m);
        out << c.object_name(s) << " " << c.object_name(t) << " " << m.idx << " |";
        for (size_t r = 0; r < a.rows(); ++r)
          for (size_t k = 0; k < a.cols(); ++k) out << " " << a.get(r, k);
        out << "\n";
      }
  return out.str();
}

FunRep read_functor(std::string_view text, const Caps& caps) {
  std::istringstream in{std::string(text)};
  std::vector<std::pair<size_t, std::string>> lines;
  size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const size_t h = line.find('#'); h != std::string::npos) line.resize(h);
    std::string s = trim(line);
    if (!s.empty()) lines.emplace_back(lineno, std::move(s));
  }
  auto fail = [](size_t ln, const std::string& what) -> UsageError {
    return UsageError("functor file line " + std::to_string(ln) + ": " + what);
  };
  if (lines.empty() || lines[0].second != "fonctex-functor 1") throw UsageError("functor file: missing header 'fonctex-functor 1'");

  size_t pos = 1;
  std::map<std::string, std::string> header;
  while (pos < lines.size()) {
    const auto& [ln, s] = lines[pos];
    const size_t sp = s.find_first_of(" \t");
    const std::string key = s.substr(0, sp);
    if (key != "category" && key != "field" && key != "label" && key != "dims") break;
    if (sp == std::string::npos) throw fail(ln, "missing value for '" + key + "'");
    if (header.count(key)) throw fail(ln, "duplicate '" + key + "'");
    header[key] = trim(std::string_view(s).substr(sp));
    ++pos;
  }
  for (const char* k : {"category", "field", "dims"})
    if (!header.count(k)) throw UsageError(std::string("functor file: missing '") + k + "'");

  const FinCat c = parse_category(header["category"], caps);
  const auto p = parse_uint(header["field"]);
  if (!p || !is_prime(*p)) throw UsageError("functor file: field must be a prime");
  std::vector<size_t> dims;
  for (const std::string& w : split_ws(header["dims"])) {
    const auto v = parse_uint(w);
    if (!v) throw UsageError("functor file: bad dimension '" + w + "'");
    dims.push_back(*v);
  }
  if (dims.size() != c.num_objects())
    throw UsageError("functor file: " + std::to_string(dims.size()) + " dims for " + std::to_string(c.num_objects()) +
                     " objects");

  std::map<Mor, FMat> table;
  for (ObjId s = 0; s < c.num_objects(); ++s)
    for (ObjId t = 0; t < c.num_objects(); ++t)
      for (const Mor& m : c.homs(s, t, caps.enumeration)) {
        if (pos >= lines.size())
          throw UsageError("functor file: missing morphism " + c.object_name(s) + " " + c.object_name(t) + " " +
                           std::to_string(m.idx));
        const auto& [ln, line] = lines[pos++];
        const size_t bar = line.find('|');
        if (bar == std::string::npos) throw fail(ln, "expected '<src> <dst> <index> | entries'");
        const auto head = split_ws(line.substr(0, bar));
        if (head.size() != 3 || head[0] != c.object_name(s) || head[1] != c.object_name(t) ||
            parse_uint(head[2]) != std::optional<uint64_t>(m.idx))
          throw fail(ln, "expected morphism " + c.object_name(s) + " " + c.object_name(t) + " " + std::to_string(m.idx));
        const auto body = split_ws(line.substr(bar + 1));
        if (body.size() != dims[t] * dims[s])
          throw fail(ln, "expected " + std::to_string(dims[t] * dims[s]) + " entries, got " + std::to_string(body.size()));
        FMat a(static_cast<uint32_t>(*p), dims[t], dims[s]);
        for (size_t k = 0; k < body.size(); ++k) {
          const auto v = parse_uint(body[k]);
          if (!v || *v >= *p) throw fail(ln, "entry '" + body[k] + "' is not a residue mod " + std::to_string(*p));
          a.set(k / dims[s], k % dims[s], static_cast<uint32_t>(*v));
        }
        table.emplace(m, std::move(a));
      }
  if (pos != lines.size()) throw fail(lines[pos].first, "trailing data");
  const std::string label = header.count("label") ? header["label"] : "file";
  return FunRep::from_table(c, static_cast<uint32_t>(*p), std::move(dims), std::move(table), label);
}

FunRep read_functor_file(const std::string& path, const Caps& caps) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open functor file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return read_functor(ss.str(), caps);
}

// ---- run

namespace {

constexpr const char* kTheorem = "theorem-implied";
constexpr const char* kData = "data-only";
constexpr const char* kFalsifier = "falsifier";

constexpr const char* kTruncationNote =
    "An n-presentation of F by functors induced from D on the full category of finitely generated free modules "
    "restricts along the full inclusion of P_N to an n-presentation on P_N by the same formulas: hom-sets between "
    "objects of P_N are unchanged and exactness is objectwise. So whenever the untruncated statement is implied, the "
    "truncated check must pass: a truncated failure is a falsifier, a truncated pass confirms the prediction at this N.";

constexpr const char* kDecisionNote =
    "Decision procedure: n + 1 greedy covers with generators at objects of the retract closure of D. Their images "
    "coincide with the counit images, and the kernels differ from those of the counit iteration by induced summands, "
    "so every stage is onto iff every counit stage is onto.";

constexpr const char* kLinearNote =
    "Integer-coefficient statements are checked in their F_p-linear analogue: the bar complexes are taken over the "
    "prime field and the stabilization argument does not use the base ring before duality.";

using Clock = std::chrono::steady_clock;

struct Ctx {
  const ExperimentConfig& cfg;
  Caps caps;
  Json& rep;
  RunOutcome& out;
  Json timings = Json::object();
  Clock::time_point mark = Clock::now();
  std::optional<size_t> value_at_t;

  void lap(const std::string& name) {
    const auto now = Clock::now();
    timings[name] = std::chrono::duration<double, std::milli>(now - mark).count();
    mark = now;
  }

  void verdict(const std::string& name, const Json& value, const char* status) {
    rep["verdicts"].push_back({{"name", name}, {"value", value}, {"status", status}});
    out.summary += name + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + " [" + status + "]\n";
    if (std::string(status) == kFalsifier) out.exit_code = 4;
  }

  void note(const std::string& s) { rep["notes"].push_back(s); }

  uint32_t field_for(const FinCat& c) const {
    return cfg.has("field") ? static_cast<uint32_t>(cfg.require_uint("field")) : default_field(c);
  }

  void describe_category(const FinCat& c, uint32_t p) {
    rep["category"] = c.spec();
    rep["field"] = p;
    try {
      rep["N"] = truncation_level(c);
    } catch (const ArgumentError&) {
      rep["N"] = nullptr;
    }
  }

  FunRep functor(const std::string& role, const std::string& source, const FinCat& c, uint32_t p) {
    FunRep f = load_functor(source, c, p, cfg.seed(), caps);
    rep["inputs"].push_back(
        {{"role", role}, {"source", source}, {"label", f.label()}, {"fingerprint", f.fingerprint()}, {"dims", f.dims()}});
    return f;
  }
};

FinCat category_from(const Ctx& ctx, const std::string& key) {
  return parse_category(ctx.cfg.require(key), ctx.caps);
}

Json names_of(const FinCat& c, const std::vector<ObjId>& xs) {
  Json a = Json::array();
  for (ObjId x : xs) a.push_back(c.object_name(x));
  return a;
}

Json multiplicities_json(const FinCat& c, const std::vector<size_t>& mult) {
  Json o = Json::object();
  for (ObjId x = 0; x < mult.size(); ++x)
    if (mult[x]) o[c.object_name(x)] = mult[x];
  return o;
}

std::optional<size_t> truncation_of(const FinCat& c) {
  try {
    return truncation_level(c);
  } catch (const ArgumentError&) {
    return std::nullopt;
  }
}

// ---- degree

void cmd_degree(Ctx& ctx) {
  const FinCat c = category_from(ctx, "cat");
  const uint32_t p = ctx.field_for(c);
  ctx.describe_category(c, p);
  const FunRep f = ctx.functor("functor", ctx.cfg.require("functor"), c, p);
  const size_t n = truncation_level(c);
  if (n == 0 && !ctx.cfg.has("window")) throw UsageError("degree needs N >= 1");
  const size_t window = ctx.cfg.get_uint("window", n - 1);
  const DegreeReport r = degree(f, window);
  ctx.lap("difference");
  const std::optional<size_t> cr = degree_by_cross_effects(f, window);
  ctx.lap("cross_effects");

  Json res;
  res["window"] = window;
  res["levels"] = r.levels;
  res["degree"] = r.degree ? Json(*r.degree) : Json(nullptr);
  res["verdict"] = r.verdict;
  res["cross_effect_degree"] = cr ? Json(*cr) : Json(nullptr);
  const bool agree = r.degree ? (cr && static_cast<int>(*cr) == std::max(*r.degree, 0)) : !cr;
  res["definitions_agree"] = agree;
  ctx.rep["results"] = res;
  ctx.verdict("degree", r.degree ? Json(*r.degree) : Json(r.verdict), kData);
  if (!agree) ctx.note("difference and cross-effect degrees disagree at this truncation");
}

// ---- psf

Json psf_certificate_json(const FinCat& c, const PsfResult& r) {
  Json cert;
  cert["generator_objects"] = names_of(c, r.cert.generator_objects);
  cert["stages"] = Json::array();
  for (const PsfStage& s : r.cert.stages)
    cert["stages"].push_back({{"generators", s.generators},
                              {"multiplicities", multiplicities_json(c, s.multiplicities)},
                              {"epi", s.epi},
                              {"kernel_dims", s.kernel_dims}});
  if (!r.holds) {
    cert["failure_stage"] = r.failure_stage ? Json(*r.failure_stage) : Json(nullptr);
    cert["failure_object"] = r.failure_object ? Json(c.object_name(*r.failure_object)) : Json(nullptr);
    cert["witness"] = r.witness ? Json(r.witness->values()) : Json(nullptr);
  }
  return cert;
}

void cmd_psf(Ctx& ctx) {
  const FinCat c = category_from(ctx, "cat");
  const uint32_t p = ctx.field_for(c);
  ctx.describe_category(c, p);
  const FunRep f = ctx.functor("functor", ctx.cfg.require("functor"), c, p);
  const SupportSpec d = SupportSpec::parse(c, ctx.cfg.require("support"));
  const size_t n = ctx.cfg.require_uint("n");
  ctx.note(kTruncationNote);
  ctx.note(kDecisionNote);

  const PsfResult r = check_psf(f, d, n, ctx.caps);
  ctx.lap("check_psf");
  Json res;
  res["support"] = d.describe();
  res["n"] = n;
  res["holds"] = r.holds;
  res["certificate"] = psf_certificate_json(c, r);

  // Status: theorem-implied when deg F <= d is verified and D contains an
  // object of rank >= (n + 1) d (such an object has A^{(n+1)d} as a retract).
  std::optional<int> deg;
  const auto trunc = truncation_of(c);
  if (trunc && *trunc >= 1) {
    const size_t window = ctx.cfg.has("d") ? ctx.cfg.require_uint("d") : *trunc - 1;
    if (window + 1 > *trunc) throw UsageError("claimed degree d needs N >= d + 1");
    const DegreeReport dr = degree(f, window);
    ctx.lap("degree");
    deg = dr.degree;
    res["degree"] = deg ? Json(*deg) : Json(nullptr);
    res["degree_window"] = window;
  }
  bool implied = false;
  if (deg) {
    const size_t dd = static_cast<size_t>(std::max(*deg, 0));
    const size_t bound = (n + 1) * dd;
    res["bound_rank"] = bound;
    for (ObjId x : d.objects) implied = implied || c.rank_of(x) >= bound;

    Json probes = Json::array();
    std::optional<size_t> smallest;
    for (size_t m = 0; m < bound && m <= *trunc; ++m) {
      const bool h = check_psf(f, SupportSpec(c, {*c.object_of_rank(m)}), n, ctx.caps).holds;
      probes.push_back({{"support", c.object_name(*c.object_of_rank(m))}, {"holds", h}});
      if (h && !smallest) smallest = m;
    }
    if (!smallest && bound <= *trunc) smallest = bound;
    ctx.lap("probes");
    res["sharpness_probes"] = probes;
    res["smallest_single_support_rank"] = smallest ? Json(*smallest) : Json(nullptr);
  } else if (trunc) {
    ctx.note("no degree bound within the window; the verdict is data only");
  }

  if (ctx.cfg.get("oracle", "none") == "bar") {
    const bool o = bar_connectivity_oracle(f, d, n, ctx.caps);
    ctx.lap("oracle");
    res["oracle"] = {{"name", "bar"}, {"holds", o}};
    if (o != r.holds) throw InvariantViolation("check_psf and the bar connectivity oracle disagree");
  }
  ctx.rep["results"] = res;
  if (implied)
    ctx.verdict("psf", r.holds, r.holds ? kTheorem : kFalsifier);
  else
    ctx.verdict("psf", r.holds, kData);
}

// ---- present

void cmd_present(Ctx& ctx) {
  const FinCat c = category_from(ctx, "cat");
  const uint32_t p = ctx.field_for(c);
  ctx.describe_category(c, p);
  const FunRep f = ctx.functor("functor", ctx.cfg.require("functor"), c, p);
  const size_t n = ctx.cfg.require_uint("n");
  const PresentationCert cert = present(f, n, {}, ctx.caps);
  ctx.lap("present");
  const ValidationReport v = recheck(cert);
  ctx.lap("recheck");
  if (!v.ok) throw InvariantViolation("presentation recheck failed: " + v.failure);
  Json stages = Json::array();
  for (size_t k = 0; k < cert.length(); ++k) {
    const CoverStage& s = cert.stages[k];
    Json st{{"generators", s.num_generators()},
            {"multiplicities", multiplicities_json(c, cert.multiplicities(k))},
            {"target_dims", s.target_dims},
            {"epi", s.epi}};
    if (s.kernel.rep) st["kernel_dims"] = s.kernel.rep.dims();
    stages.push_back(st);
  }
  ctx.rep["results"] = {{"n", n}, {"stages", stages}, {"complete", cert.complete}, {"recheck", v.policy}};
  ctx.verdict("presentation", cert.complete, kData);
}

// ---- ext

Json ext_json(const ExtResult& e) {
  return {{"dims", e.dims}, {"cochain_dims", e.cochain_dims}, {"ranks", e.ranks}, {"method", e.method},
          {"d2_checks", e.d2_checks}, {"d2_exhaustive", e.d2_exhaustive}};
}

void cmd_ext(Ctx& ctx) {
  const FinCat c = category_from(ctx, "cat");
  const uint32_t p = ctx.field_for(c);
  ctx.describe_category(c, p);
  const FunRep f = ctx.functor("F", ctx.cfg.has("F") ? ctx.cfg.require("F") : ctx.cfg.require("functor"), c, p);
  const FunRep g = ctx.functor("G", ctx.cfg.has("G") ? ctx.cfg.require("G") : ctx.cfg.require("target"), c, p);
  const size_t imax = ctx.cfg.get_uint("imax", 1);
  const std::string method = ctx.cfg.get("method", "resolution");
  Json res;
  std::vector<std::vector<size_t>> all;
  auto add = [&](const std::string& name, const ExtResult& e) {
    ctx.lap(name);
    res[name] = ext_json(e);
    all.push_back(e.dims);
  };
  if (method == "resolution" || method == "both") add("resolution", ext_functorcat(f, g, imax, {}, ctx.caps));
  if (method == "bar" || method == "both") add("bar", ext_bar(f, g, imax, ctx.caps));
  if (method == "monoid") add("monoid", ext_monoid(f, g, imax, ctx.caps));
  if (all.empty()) throw UsageError("method must be resolution, bar, both or monoid");
  for (const auto& d : all)
    if (d != all.front()) throw InvariantViolation("Ext computed by resolution and by the cobar complex disagree");
  res["dims"] = all.front();
  ctx.rep["results"] = res;
  ctx.verdict("ext_dims", all.front(), kData);
}

void cmd_ext_compare(Ctx& ctx) {
  const FinRing ring = FinRing::parse(ctx.cfg.require("ring"));
  const size_t n = ctx.cfg.require_uint("n");
  const size_t big = ctx.cfg.get_uint("N", n);
  if (big < n) throw UsageError("ext-compare needs N >= n");
  const size_t d = ctx.cfg.require_uint("d");
  const size_t imax = ctx.cfg.get_uint("imax", 1);
  const FinCat pn = truncated_additive(ring, big, ctx.caps);
  const uint32_t p = ctx.field_for(pn);
  ctx.describe_category(pn, p);
  const FunRep f = ctx.functor("F", ctx.cfg.get("F", "builtin:Id"), pn, p);
  const FunRep g = ctx.functor("G", ctx.cfg.get("G", "builtin:Id"), pn, p);

  const SubcategoryData sub = full_subcategory(pn, {*pn.object_of_rank(n)}, ctx.caps);
  const FunRep fm = precompose(f, sub.inclusion), gm = precompose(g, sub.inclusion);
  const ExtResult em = ext_monoid(fm, gm, imax, ctx.caps);
  ctx.lap("monoid");
  const ExtResult ef = ext_functorcat(f, g, imax, {}, ctx.caps);
  ctx.lap("functor_category");

  Json rows = Json::array();
  for (size_t j = 0; j <= imax; ++j) {
    const bool in_range = n >= (j + 2) * d;
    const bool eq = em.dims[j] == ef.dims[j];
    rows.push_back({{"j", j}, {"monoid", em.dims[j]}, {"functor_category", ef.dims[j]}, {"in_range", in_range}, {"equal", eq}});
    ctx.verdict("ext" + std::to_string(j) + "_equal", eq, kData);
  }
  ctx.rep["results"] = {{"monoid_rank", n}, {"d", d}, {"rows", rows}, {"monoid", ext_json(em)},
                        {"functor_category", ext_json(ef)}};
  ctx.note("Rows in range predict equality with Ext over the untruncated functor category; the right-hand side here "
           "is Ext over the truncation P_N, so the comparison is reported as data.");
}

// ---- hh

BiFunRep load_bifunctor(Ctx& ctx, const FinCat& c, uint32_t p) {
  const std::string src = ctx.cfg.require("bifunctor");
  if (src.rfind("builtin:", 0) != 0) throw UsageError("bifunctor must be builtin:<name>");
  const std::string name = src.substr(8);
  BiFunRep b;
  if (name == "dualtensor") {
    b = dual_tensor_bifunctor(c, p);
  } else if (name == "const") {
    b = constant_bifunctor(c, p);
  } else if (name == "lmhh") {
    const FunRep f = ctx.functor("F", ctx.cfg.get("F", "builtin:Id"), c, p);
    const ObjId t = object_or_usage(c, ctx.cfg.require("t"));
    b = representable_bifunctor(f, t);
    ctx.value_at_t = f.dim(t);
  } else if (name == "external") {
    const FunRep h = ctx.functor("U", ctx.cfg.require("U"), c, p);
    const FunRep f = ctx.functor("V", ctx.cfg.require("V"), c, p);
    b = external_bifunctor(dual(h), f);
  } else {
    throw UsageError("unknown builtin bifunctor '" + name + "'");
  }
  const ValidationReport v = validate_funrep(b.rep, ctx.cfg.seed(), ctx.caps);
  if (!v.ok) throw InvariantViolation("bifunctor failed validation: " + v.failure);
  ctx.rep["inputs"].push_back({{"role", "bifunctor"}, {"source", src}, {"label", b.label()}, {"fingerprint", b.rep.fingerprint()}});
  return b;
}

Json hh_json(const HHResult& r) {
  return {{"dims", r.dims}, {"chain_dims", r.chain_dims}, {"method", r.method}, {"columns_checked", r.columns_checked}};
}

void cmd_hh(Ctx& ctx) {
  const FinCat c = category_from(ctx, "cat");
  const uint32_t p = ctx.field_for(c);
  ctx.describe_category(c, p);
  const BiFunRep b = load_bifunctor(ctx, c, p);
  const size_t imax = ctx.cfg.get_uint("imax", 2);
  const bool one_object = c.num_objects() == 1 && c.is_matrix();
  const std::string method = ctx.cfg.get("method", one_object ? "monoid" : "category");
  Json res;
  std::vector<std::vector<size_t>> all;
  if (method == "category" || method == "both") {
    const HHResult r = hh(b, imax, ctx.caps);
    ctx.lap("category");
    res["category"] = hh_json(r);
    all.push_back(r.dims);
  }
  if (method == "monoid" || method == "both") {
    if (!one_object) throw UsageError("method monoid needs a one-object category of free modules");
    const HHResult r = hh_monoid(monoid_bimodule(b, 0), imax, ctx.caps);
    ctx.lap("monoid");
    res["monoid"] = hh_json(r);
    all.push_back(r.dims);
  }
  if (all.empty()) throw UsageError("method must be category, monoid or both");
  if (all.size() == 2 && all[0] != all[1]) throw InvariantViolation("HH by the category and monoid routes disagree");
  res["dims"] = all.front();
  ctx.rep["results"] = res;

  if (ctx.value_at_t) {
    // HH_*(C; F(-) (x) k[C(-, t)]) is F(t) in degree 0.
    std::vector<size_t> expect(imax + 1, 0);
    expect[0] = *ctx.value_at_t;
    const bool ok = all.front() == expect;
    ctx.rep["results"]["expected"] = expect;
    ctx.verdict("hh_matches_value_at_t", ok, ok ? kTheorem : kFalsifier);
  } else {
    ctx.verdict("hh_dims", all.front(), kData);
  }
}

void cmd_hh_stab(Ctx& ctx) {
  const FinRing ring = FinRing::parse(ctx.cfg.require("ring"));
  const size_t nmax = ctx.cfg.require_uint("nmax");
  const size_t big = ctx.cfg.get_uint("N", nmax);
  const FinCat c = truncated_additive(ring, big, ctx.caps);
  const uint32_t p = ctx.field_for(c);
  ctx.describe_category(c, p);
  const BiFunRep b = load_bifunctor(ctx, c, p);
  const size_t d = ctx.cfg.require_uint("d");
  const size_t imax = ctx.cfg.get_uint("imax", 1);
  ctx.note(kLinearNote);
  ctx.note("Required flags use the ranges between consecutive monoids: bijective for n >= d(i+2), surjective for "
           "n + 1 >= d(i+2). Flags outside these ranges are data.");

  const StabilityTable t = verify_stability_range(b, d, imax, nmax, ctx.caps);
  ctx.lap("table");
  Json rows = Json::array();
  for (const StabRow& r : t.rows) {
    Json row{{"i", r.i}, {"n", r.n}, {"required_flag", r.required}, {"in_range", r.in_range}, {"pass", r.pass},
             {"status", r.in_range ? (r.pass ? kTheorem : kFalsifier) : kData}};
    if (r.computed) {
      row["dim_src"] = r.map.dim_src;
      row["dim_dst"] = r.map.dim_dst;
      row["rank"] = r.map.rank;
      row["injective"] = r.map.injective();
      row["surjective"] = r.map.surjective();
    } else {
      row["note"] = r.note;
    }
    rows.push_back(row);
  }
  Json deg{{"first", t.degree.first ? Json(*t.degree.first) : Json(nullptr)},
           {"second", t.degree.second ? Json(*t.degree.second) : Json(nullptr)},
           {"within_claim", t.degree_ok}};
  ctx.rep["results"] = {{"d", d},          {"imax", imax},      {"nmax", nmax},
                        {"degree", deg},   {"rows", rows},      {"hh_dims", t.hh_dims},
                        {"functoriality", t.functoriality_ok}, {"verdict", t.verdict}};
  ctx.out.csv = t.csv();
  if (t.verdict == "PASS")
    ctx.verdict("stability", t.verdict, kTheorem);
  else if (t.verdict == "FAIL")
    ctx.verdict("stability", t.verdict, kFalsifier);
  else
    ctx.verdict("stability", t.verdict, kData);
  if (t.verdict == "INCOMPLETE") ctx.out.exit_code = 2;
}

void cmd_kunneth(Ctx& ctx) {
  const FinCat c = category_from(ctx, "cat");
  const FinCat dcat = ctx.cfg.has("cat2") ? category_from(ctx, "cat2") : c;
  const uint32_t p = ctx.field_for(c);
  ctx.describe_category(c, p);
  ctx.rep["category2"] = dcat.spec();
  const FunRep f = ctx.functor("F", ctx.cfg.require("F"), c, p);
  const FunRep g = ctx.functor("G", ctx.cfg.require("G"), c, p);
  const FunRep u = ctx.functor("U", ctx.cfg.require("U"), dcat, p);
  const FunRep v = ctx.functor("V", ctx.cfg.require("V"), dcat, p);
  const size_t imax = ctx.cfg.get_uint("imax", 2);
  const auto rows = kunneth_check(f, g, u, v, imax, ctx.caps);
  ctx.lap("kunneth");
  Json jr = Json::array();
  bool ok = true;
  for (const KunnethRow& r : rows) {
    jr.push_back({{"degree", r.degree}, {"product", r.lhs}, {"tensor", r.rhs}, {"equal", r.equal}});
    ok = ok && r.equal;
  }
  ctx.rep["results"] = {{"rows", jr}};
  ctx.verdict("kunneth", ok, ok ? kTheorem : kFalsifier);
}

void cmd_selftest(Ctx& ctx) {
  const auto results = run_selftest(ctx.caps);
  ctx.lap("selftest");
  Json checks = Json::array();
  size_t failed = 0;
  for (const auto& r : results) {
    checks.push_back({{"module", r.module}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    if (!r.pass) {
      ++failed;
      ctx.out.summary += "[FAIL] " + r.module + ": " + r.name + (r.detail.empty() ? "" : " (" + r.detail + ")") + "\n";
    }
  }
  ctx.rep["results"] = {{"checks", checks}, {"total", results.size()}, {"failed", failed}};
  ctx.verdict("selftest", std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " passed",
              kTheorem);
  if (failed) ctx.out.exit_code = 3;
}

}  // namespace

void selftest_cli(std::vector<SelftestResult>& out) {
  auto check = [&out](const std::string& name, const std::function<bool()>& fn) {
    SelftestResult r{"cli", name, false, ""};
    try {
      r.pass = fn();
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  };
  const FinCat p2 = truncated_additive(FinRing(2), 2);
  check("builtin:Id on P_2(F_2) has dims (0,1,2)", [&] { return builtin_functor("Id", p2, 2).dims() == std::vector<size_t>{0, 1, 2}; });
  check("builtin:P(A1) is the standard projective", [&] {
    return same_data(builtin_functor("P(A1)", p2, 2), standard_projective(p2, 1, 2));
  });
  check("builtin:Lambda2 on P_2(F_2) has dims (0,0,1)", [&] {
    return builtin_functor("Lambda2", p2, 2).dims() == std::vector<size_t>{0, 0, 1};
  });
  auto run_text = [](const std::string& text) { return run(ExperimentConfig::parse(text)); };
  check("degree of builtin:const is 0", [&] {
    const RunOutcome r = run_text("command = degree\ncat = PN(Z/2,4)\nfunctor = builtin:const\nwindow = 3\n");
    return r.exit_code == 0 && Json::parse(r.report)["results"]["degree"] == 0;
  });
  check("builtin:Id has a 0-presentation from A1", [&] {
    const RunOutcome r = run_text("command = psf\ncat = PN(Z/2,3)\nfunctor = builtin:Id\nsupport = A1\nn = 0\n");
    return r.exit_code == 0 && Json::parse(r.report)["results"]["holds"] == true;
  });
}

RunOutcome run(const ExperimentConfig& config) {
  const auto start = Clock::now();
  RunOutcome out;
  Json rep;
  rep["tool"] = "fonctex";
  rep["version"] = kVersion;
  rep["config"] = config.entries();
  rep["verdicts"] = Json::array();
  rep["inputs"] = Json::array();
  rep["notes"] = Json::array();
  rep["N"] = nullptr;
  Ctx ctx{config, Caps{}, rep, out, Json::object(), Clock::now(), std::nullopt};
  try {
    const std::string cmd = config.require("command");
    rep["operation"] = cmd;
    ctx.caps = config.caps();
    rep["seed"] = config.seed();
    rep["caps"] = {{"enumeration", ctx.caps.enumeration},
                   {"hom_size", ctx.caps.hom_size},
                   {"chain_dim", ctx.caps.chain_dim},
                   {"exhaustive_morphisms", ctx.caps.exhaustive_morphisms},
                   {"sampled_checks", ctx.caps.sampled_checks}};
    if (cmd == "selftest") cmd_selftest(ctx);
    else if (cmd == "degree") cmd_degree(ctx);
    else if (cmd == "psf") cmd_psf(ctx);
    else if (cmd == "present") cmd_present(ctx);
    else if (cmd == "ext") cmd_ext(ctx);
    else if (cmd == "ext-compare") cmd_ext_compare(ctx);
    else if (cmd == "hh") cmd_hh(ctx);
    else if (cmd == "hh-stab") cmd_hh_stab(ctx);
    else if (cmd == "kunneth") cmd_kunneth(ctx);
    else throw UsageError("unknown command '" + cmd + "'");
  } catch (const UsageError& e) {
    rep["error"] = {{"kind", "usage"}, {"message", e.what()}};
    out.exit_code = 1;
  } catch (const ArgumentError& e) {
    rep["error"] = {{"kind", "usage"}, {"message", e.what()}};
    out.exit_code = 1;
  } catch (const CapExceeded& e) {
    rep["error"] = {{"kind", "cap"}, {"message", e.what()}, {"required", e.required()}, {"cap", e.cap()}};
    out.exit_code = 2;
  } catch (const InvariantViolation& e) {
    rep["error"] = {{"kind", "invariant"}, {"message", e.what()}};
    out.exit_code = 3;
  } catch (const std::exception& e) {
    rep["error"] = {{"kind", "internal"}, {"message", e.what()}};
    out.exit_code = 3;
  }
  if (rep.contains("error")) out.summary += "error: " + rep["error"]["message"].get<std::string>() + "\n";
  rep["exit_code"] = out.exit_code;
  ctx.timings["total"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  rep["runtime_ms"] = ctx.timings;
  out.report = rep.dump(2) + "\n";
  return out;
}

}  // namespace fonctex
