#pragma once
////////////////////////////////////////////////////////////////////////////////
// json_io.hpp
//
// Configuration input and result output for the command-line layer.
//
// Input: one hypersurface per JSON config file,
//
//   {"p": 3, "k": 1, "n": 2, "d": 2,
//    "monomials": [{"exps": [2, 0], "c": 1}, {"exps": [0, 2], "c": 1}]}
//
// `exps` has length n and sums to d.  Coefficients are integers reduced into
// the prime subfield; coefficient sequences for proper extension fields are
// rejected with a clear error rather than silently misread.
//
// Output: ordered JSON so that identical inputs and seeds produce
// byte-identical bytes (the lone "timestamp" field excepted).  Exact integers
// are serialized as decimal strings because JSON numbers cannot carry them;
// exact rationals carry numerator and denominator strings plus a float
// rendering; ordered-field exponents print as the string "-inf" when the
// quantity is exactly zero.  Inequality checks serialize as {lhs, rhs, pass}
// so a failing bound is visible verbatim in the artifact.
////////////////////////////////////////////////////////////////////////////////

#include <json.hpp>

#include <cstdint>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

#include "approx.hpp"
#include "bigint.hpp"
#include "bilinear.hpp"
#include "counting.hpp"
#include "dichotomy.hpp"
#include "errors.hpp"
#include "exp_sums.hpp"
#include "field.hpp"
#include "forms.hpp"
#include "ord.hpp"
#include "shrink.hpp"
#include "smallchar.hpp"
#include "version.hpp"
#include "weyl.hpp"

namespace ffmoduli {

using Json = nlohmann::ordered_json;

//////////////////////////////////////////////////////////////////////
// Scalar conventions.
//////////////////////////////////////////////////////////////////////

inline Json json_bigint(const BigInt& v) { return bigint_str(v); }

inline Json json_bigrat(const BigRat& v) {
  Json j;
  j["num"] = bigint_str(numerator(v));
  j["den"] = bigint_str(denominator(v));
  j["approx"] = bigrat_to_double(v);
  return j;
}

inline Json json_ord(const Ord& o) {
  if (o.is_neg_inf()) return "-inf";
  return o.value();
}

inline Json json_ineq(long double lhs, long double rhs, bool pass) {
  Json j;
  j["lhs"] = double(lhs);
  j["rhs"] = double(rhs);
  j["pass"] = pass;
  return j;
}

inline Json json_poly(const Field& F, const Poly& g) {
  Json arr = Json::array();
  for (const FqElem& c : g) arr.push_back(F.index_of(c));
  return arr;  // coefficient indices, ascending degree
}

//////////////////////////////////////////////////////////////////////
// Config files.
//////////////////////////////////////////////////////////////////////

struct LoadedConfig {
  std::uint32_t p = 0;
  std::uint32_t k = 1;
  HyperForm f;
  std::string path;
};

inline Field field_of(const LoadedConfig& c) {
  return c.k == 1 ? Field(c.p) : Field::extension(c.p, c.k);
}

inline LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParameterContract("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& ex) {
    throw ParameterContract("config file '" + path +
                            "' is not valid JSON: " + ex.what());
  }
  for (const char* key : {"p", "n", "d", "monomials"})
    if (!j.contains(key))
      throw ParameterContract("config file '" + path + "' lacks field '" +
                              key + "'");
  const std::uint32_t p = j["p"].get<std::uint32_t>();
  const std::uint32_t k = j.value("k", std::uint32_t(1));
  if (!detail::is_prime_u32(p))
    throw ParameterContract("config file '" + path + "': p = " +
                            std::to_string(p) + " is not prime");
  if (k < 1)
    throw ParameterContract("config file '" + path + "': k must be >= 1");
  const unsigned n = j["n"].get<unsigned>();
  const unsigned d = j["d"].get<unsigned>();

  HyperForm::IntTerms terms;
  if (!j["monomials"].is_array() || j["monomials"].empty())
    throw ParameterContract("config file '" + path +
                            "': monomials must be a nonempty array");
  for (const Json& m : j["monomials"]) {
    if (!m.contains("exps") || !m.contains("c"))
      throw ParameterContract("config file '" + path +
                              "': each monomial needs 'exps' and 'c'");
    if (m["c"].is_array())
      throw ParameterContract(
          "config file '" + path +
          "': extension-field coefficient sequences are not supported; "
          "give an integer coefficient");
    std::vector<unsigned> exps;
    for (const Json& x : m["exps"]) exps.push_back(x.get<unsigned>());
    terms.emplace_back(std::move(exps), m["c"].get<long long>());
  }
  // HyperForm validates lengths, degrees, and nonvanishing.
  return LoadedConfig{p, k, HyperForm(n, d, terms), path};
}

//////////////////////////////////////////////////////////////////////
// Output envelope: every artifact names the schema, library version,
// command, field, seed, and thread count, so a result file is
// self-describing and reproducible.
//////////////////////////////////////////////////////////////////////

inline std::string iso8601_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline Json output_envelope(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["command"] = command;
  j["timestamp"] = iso8601_now();
  return j;
}

inline void embed_field(Json& j, const Field& F) {
  Json f;
  f["p"] = F.p();
  f["k"] = F.k();
  f["q"] = F.q();
  j["field"] = f;
}

//////////////////////////////////////////////////////////////////////
// Report serializers.
//////////////////////////////////////////////////////////////////////

inline Json json_of(const CountResult& r) {
  Json j;
  j["N"] = json_bigint(r.N);
  j["box_size"] = json_bigint(r.box_size);
  j["box_dimension"] = r.box_dimension;
  j["mu"] = r.mu;
  j["muhat"] = r.muhat;
  j["ratio"] = json_bigrat(r.ratio);
  j["strategy"] = r.strategy_used;
  j["threads"] = r.threads_used;
  return j;
}

inline Json json_of(const IntegralResult& r) {
  Json j;
  j["N"] = json_bigint(r.N);
  j["grid_points"] = json_bigint(r.grid_points);
  j["box_points"] = json_bigint(r.box_points);
  j["profile_classes"] = json_bigint(r.profile_classes);
  j["muhat"] = r.muhat;
  j["ratio"] = json_bigrat(r.ratio);
  return j;
}

inline Json json_of(const WeylBatteryReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["pass"] = r.all_pass();
  return j;
}

inline Json json_of(const SweepReport& r) {
  Json j;
  j["points"] = json_bigint(r.points);
  j["failures"] = json_bigint(r.failures);
  j["worst_margin"] = double(r.worst_margin);
  j["pass"] = r.all_pass;
  return j;
}

inline Json json_of(const CountInequality& r) {
  Json j;
  j["n2_zero"] = json_bigint(r.n2_zero);
  j["n1_top"] = json_bigint(r.n1_top);
  j["rhs"] = json_bigint(r.rhs);
  j["pass"] = r.pass;
  return j;
}

inline Json json_of(const ShrinkBatteryReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["pass"] = r.all_pass();
  return j;
}

inline Json json_of(const Field& F, const RationalApprox& r) {
  Json j;
  j["a"] = json_poly(F, r.a);
  j["g"] = json_poly(F, r.g);
  j["g_degree"] =
      r.g.empty() ? Json("-inf") : Json(static_cast<long long>(r.g.size()) - 1);
  j["err_exponent"] = json_ord(r.residual.abs_exponent());
  return j;
}

inline Json json_of(const ArcGridSweep& r) {
  Json j;
  j["points"] = json_bigint(r.points);
  j["members"] = json_bigint(r.members);
  j["digits"] = r.digits;
  return j;
}

inline Json json_of(const SigmaReport& r) {
  Json j;
  Json counts = Json::array();
  for (const BigInt& c : r.counts) counts.push_back(json_bigint(c));
  j["counts"] = counts;
  j["ambient_dim"] = r.ambient_dim;
  j["dim_estimate"] = r.dim_estimate;
  j["sigma"] = r.sigma;
  j["exact"] = r.exact;
  return j;
}

inline Json json_of(const DichotomySweep& r) {
  Json j;
  j["cells"] = json_bigint(r.cells);
  j["bound_only"] = json_bigint(r.bound_only);
  j["arc_only"] = json_bigint(r.arc_only);
  j["both"] = json_bigint(r.both);
  j["digits"] = r.digits;
  return j;
}

inline Json json_of(const ShellIntegralReport& r) {
  Json j;
  j["rho"] = double(r.rho);
  j["sigma"] = r.sigma;
  j["delta"] = double(r.delta);
  j["delta_positive"] = r.delta_positive;
  j["p1_condition"] = r.p1_condition;
  j["hypotheses_ok"] = r.hypotheses_ok;
  if (!r.note.empty()) j["note"] = r.note;
  j["digits"] = r.digits;
  j["covering_level"] = r.dirichlet_level;
  j["base"] = json_ineq(r.base_integral, r.base_bound, r.base_pass);
  Json shells = Json::array();
  for (const ShellEntry& s : r.shells) {
    Json row;
    row["J"] = s.J;
    row["cells"] = json_bigint(s.cells);
    row["integral"] = double(s.integral);
    row["bound"] = double(s.bound);
    row["pass"] = s.pass;
    shells.push_back(row);
  }
  j["shells"] = shells;
  j["total"] = json_ineq(r.total_integral, r.total_bound, r.total_pass);
  j["all_pass"] = r.all_pass;
  return j;
}

inline Json json_of(const SmallCharReport& r) {
  Json j;
  j["d"] = r.d;
  j["F_next_vanishes"] = r.f_next_vanishes;
  j["standard_shape"] = r.standard_shape;
  j["e"] = r.e;
  j["p"] = r.p;
  j["term_count"] = r.term_count;
  j["workspace_monomials"] = r.workspace_monomials;
  j["vanishing_count"] = r.vanishing_count;
  j["head_valuation"] = r.head_valuation;
  j["head_vanishes"] = r.head_vanishes;
  j["chains_covered"] = r.chains_covered;
  Json terms = Json::array();
  for (const FermatTerm& t : r.terms) {
    Json row;
    row["exponents"] = t.exponents;
    row["coefficient"] = json_bigint(t.coefficient);
    row["residue"] = t.residue;
    row["head"] = t.head;
    row["dm1_factor_vanishes"] = t.dm1_factor_vanishes;
    terms.push_back(row);
  }
  j["terms"] = terms;
  return j;
}

//////////////////////////////////////////////////////////////////////
// Artifact writing.
//////////////////////////////////////////////////////////////////////

inline void write_output(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(out_path);
  if (!out)
    throw ParameterContract("cannot open output file '" + out_path + "'");
  out << text;
}

}  // namespace ffmoduli
