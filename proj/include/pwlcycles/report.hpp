// Analysis reports: running the bound and verification pipelines on a
// descriptor, JSON serialization, the human summary, the scan CSV and the
// exact conic/resultant dump.
#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pwlcycles/bound_engine.hpp"
#include "pwlcycles/descriptor.hpp"
#include "pwlcycles/displacement.hpp"

#ifndef PWLCYCLES_VERSION
#define PWLCYCLES_VERSION "unknown"
#endif

namespace pwlcycles {

inline constexpr const char* kStabilityConvention = "delta' < 0 at a root means attracting";

struct VerifyOptions {
  std::optional<real> y0_max;  // default_y0_max when absent
  real tol = 1e-12L;
  std::size_t samples = 400;
};

struct Verification {
  Rational b;
  double y0_max = 0;
  double tol = 0;
  std::size_t samples = 0;
  std::size_t scan_failures = 0;
  CycleSet cycles;
  bool sign_consistency = true;
  std::optional<int> certified_bound;

  std::size_t observed_count() const { return cycles.count; }
  bool exceeds_bound() const { return certified_bound && static_cast<int>(cycles.count) > *certified_bound; }
  bool exact_count_established() const {
    return certified_bound && !cycles.continuum && static_cast<int>(cycles.count) == *certified_bound;
  }
};

struct AnalysisReport {
  SystemDescriptor descriptor;
  HypothesisReport hypotheses;
  std::optional<CanonicalForm> canonical;
  BoundReport bound;
  std::optional<Verification> verification;
  std::string version = PWLCYCLES_VERSION;
  double seconds = 0;
};

// ---- pipelines -------------------------------------------------------------------

inline AnalysisReport analyze_bound(const SystemDescriptor& d) {
  AnalysisReport r;
  r.descriptor = d;
  if (d.canonical) {
    r.canonical = *d.canonical;
    r.hypotheses = check_hypotheses(*d.canonical);
    r.bound = dispatch_bound(*d.canonical);
    return r;
  }
  if (!d.system) throw ParseError("descriptor holds no system");
  const PWLSystem& sys = *d.system;
  if (transversal(sys)) {
    r.canonical = to_canonical(sys);
    r.hypotheses = check_hypotheses(*r.canonical, sys);
  }
  r.bound = dispatch_bound(sys);
  return r;
}

/// Runs the displacement scan at b*; the half-maps need condition (H).
inline Verification run_verification(const CanonicalForm& cf, const HypothesisReport& h,
                                     const std::optional<int>& certified, const VerifyOptions& opt = {},
                                     std::vector<DisplacementSample>* scan_out = nullptr) {
  if (!h.condition_H()) throw HypothesisViolation("condition (H) fails: the half-maps are not defined");
  if (opt.samples < 64) throw InvalidArgument("at least 64 samples are required");
  if (!(opt.tol > 0)) throw InvalidArgument("tol must be positive");
  Verification v;
  v.b = cf.b_star;
  v.tol = static_cast<double>(opt.tol);
  v.samples = opt.samples;
  const real y0_max = opt.y0_max ? *opt.y0_max : default_y0_max(cf, cf.b_star);
  v.y0_max = static_cast<double>(y0_max);
  const Displacement d(cf, cf.b_star, opt.tol);
  const auto scan = displacement_scan(d, y0_max, opt.samples);
  for (const auto& s : scan) v.scan_failures += s.inside_domain ? 0 : 1;
  v.cycles = find_cycles(d, scan);
  v.sign_consistency = sign_consistency_check(cf, cf.b_star, v.cycles, build_F(cf, cf.b_star));
  v.certified_bound = certified;
  if (scan_out) *scan_out = scan;
  return v;
}

inline void verify_report(AnalysisReport& r, const VerifyOptions& opt = {}) {
  if (!r.canonical) throw HypothesisViolation("no transversal crossing: the half-maps are not defined");
  r.verification = run_verification(*r.canonical, r.hypotheses, r.bound.upper_bound, opt);
}

// ---- enum names --------------------------------------------------------------------

namespace detail {

template <class E>
E enum_from_string(const std::string& s, E last, const char* what) {
  for (int i = 0; i <= static_cast<int>(last); ++i) {
    const auto e = static_cast<E>(i);
    if (s == to_string(e)) return e;
  }
  throw ParseError(std::string("unknown ") + what + ": " + s);
}

inline json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

inline std::vector<Rational> rationals_from(const json& a, const std::string& where) {
  std::vector<Rational> out;
  for (const auto& x : a) out.push_back(rational_field(x, where));
  return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

}  // namespace detail

// ---- JSON ---------------------------------------------------------------------------

inline json bound_to_json(const BoundReport& b) {
  json j;
  j["method"] = to_string(b.theorem_used);
  j["label"] = describe(b.theorem_used);
  j["conclusive"] = b.conclusive();
  j["upper_bound"] = detail::optional_json(b.upper_bound);
  j["ell"] = detail::optional_json(b.ell);
  j["k"] = detail::optional_json(b.k);
  j["N"] = detail::optional_json(b.N);
  j["conic_class"] = b.conic_class ? json(to_string(*b.conic_class)) : json(nullptr);
  j["conic_detail"] = b.conic_detail ? json(to_string(*b.conic_detail)) : json(nullptr);
  j["delta"] = b.delta ? json(b.delta->to_string()) : json(nullptr);
  j["R"] = b.R ? detail::rationals_json(b.R->coefficients()) : json(nullptr);
  j["root_count_method"] = b.root_count_method;
  json fired = json::array();
  for (const auto& f : b.fired) fired.push_back({{"method", to_string(f.method)}, {"bound", f.bound}});
  j["fired"] = fired;
  json certs = json::array();
  for (const auto& c : b.certificates)
    certs.push_back({{"kind", to_string(c.kind)}, {"claim", c.claim}, {"witness", detail::rationals_json(c.witness)}});
  j["certificates"] = certs;
  j["notes"] = b.notes;
  return j;
}

inline BoundReport bound_from_json(const json& j) {
  BoundReport b;
  b.theorem_used = detail::enum_from_string(j.at("method").get<std::string>(), Method::Inconclusive, "method");
  b.upper_bound = detail::optional_from<int>(j, "upper_bound");
  b.ell = detail::optional_from<int>(j, "ell");
  b.k = detail::optional_from<int>(j, "k");
  b.N = detail::optional_from<int>(j, "N");
  if (auto s = detail::optional_from<std::string>(j, "conic_class"))
    b.conic_class = detail::enum_from_string(*s, ConicClass::Plane, "conic class");
  if (auto s = detail::optional_from<std::string>(j, "conic_detail"))
    b.conic_detail = detail::enum_from_string(*s, ConicDetail::Plane, "conic detail");
  if (auto s = detail::optional_from<std::string>(j, "delta")) b.delta = Rational::parse(*s);
  if (j.contains("R") && !j["R"].is_null()) b.R = UniPoly(detail::rationals_from(j["R"], "R"));
  b.root_count_method = j.value("root_count_method", "");
  for (const auto& f : j.at("fired"))
    b.fired.push_back({detail::enum_from_string(f.at("method").get<std::string>(), Method::Inconclusive, "method"),
                       f.at("bound").get<int>()});
  for (const auto& c : j.at("certificates")) {
    const auto kind = certificate_kind_from_string(c.at("kind").get<std::string>());
    if (!kind) throw ParseError("unknown certificate kind");
    b.certificates.push_back({*kind, c.at("claim").get<std::string>(), detail::rationals_from(c.at("witness"), "witness")});
  }
  b.notes = j.at("notes").get<std::vector<std::string>>();
  return b;
}

inline json hypotheses_to_json(const HypothesisReport& h) {
  return {{"transversality", h.transversality_ok}, {"left", h.left_ok},
          {"right", h.right_ok},                   {"left_kind", to_string(h.left_kind)},
          {"right_kind", to_string(h.right_kind)}, {"condition_H", h.condition_H()},
          {"focus_focus", h.focus_focus()}};
}

inline HypothesisReport hypotheses_from_json(const json& j) {
  HypothesisReport h;
  h.transversality_ok = j.at("transversality").get<bool>();
  h.left_ok = j.at("left").get<bool>();
  h.right_ok = j.at("right").get<bool>();
  h.left_kind = j.at("left_kind") == "focus" ? EquilibriumKind::Focus : EquilibriumKind::NonFocus;
  h.right_kind = j.at("right_kind") == "focus" ? EquilibriumKind::Focus : EquilibriumKind::NonFocus;
  return h;
}

inline json verification_to_json(const Verification& v) {
  json j;
  j["b"] = v.b.to_string();
  j["y0_max"] = v.y0_max;
  j["tol"] = v.tol;
  j["samples"] = v.samples;
  j["scan_failures"] = v.scan_failures;
  j["stability_convention"] = kStabilityConvention;
  j["continuum"] = v.cycles.continuum;
  j["observed_count"] = v.observed_count();
  j["certified_bound"] = detail::optional_json(v.certified_bound);
  j["exact_count_established"] = v.exact_count_established();
  j["sign_consistency"] = v.sign_consistency;
  json zeros = json::array();
  for (const auto& z : v.cycles.zeros)
    zeros.push_back({{"y0", static_cast<double>(z.y0_root)},
                     {"y1", static_cast<double>(z.y1)},
                     {"delta_prime", static_cast<double>(z.delta_prime)},
                     {"residual", static_cast<double>(z.residual)},
                     {"multiplicity", to_string(z.multiplicity)},
                     {"stability", to_string(z.stability)}});
  j["cycles"] = zeros;
  return j;
}

inline Verification verification_from_json(const json& j) {
  Verification v;
  v.b = Rational::parse(j.at("b").get<std::string>());
  v.y0_max = j.at("y0_max").get<double>();
  v.tol = j.at("tol").get<double>();
  v.samples = j.at("samples").get<std::size_t>();
  v.scan_failures = j.at("scan_failures").get<std::size_t>();
  v.cycles.continuum = j.at("continuum").get<bool>();
  v.certified_bound = detail::optional_from<int>(j, "certified_bound");
  v.sign_consistency = j.at("sign_consistency").get<bool>();
  for (const auto& z : j.at("cycles")) {
    CycleZero c;
    c.y0_root = z.at("y0").get<double>();
    c.y1 = z.at("y1").get<double>();
    c.delta_prime = z.at("delta_prime").get<double>();
    c.residual = z.at("residual").get<double>();
    c.multiplicity = z.at("multiplicity") == "simple" ? Multiplicity::Simple : Multiplicity::SuspectedNonsimple;
    c.stability = detail::enum_from_string(z.at("stability").get<std::string>(), Stability::Undetermined, "stability");
    v.cycles.zeros.push_back(c);
  }
  v.cycles.count = v.cycles.zeros.size();
  return v;
}

inline json report_to_json(const AnalysisReport& r) {
  json j;
  j["tool"] = {{"name", "pwlcycles"}, {"version", r.version}};
  j["descriptor"] = descriptor_to_json(r.descriptor);
  j["hypotheses"] = hypotheses_to_json(r.hypotheses);
  j["canonical_form"] = r.canonical ? canonical_to_json(*r.canonical) : json(nullptr);
  j["bound"] = bound_to_json(r.bound);
  j["verification"] = r.verification ? verification_to_json(*r.verification) : json(nullptr);
  j["timing"] = {{"seconds", r.seconds}};
  return j;
}

inline AnalysisReport report_from_json(const json& j) {
  AnalysisReport r;
  r.version = j.at("tool").at("version").get<std::string>();
  r.descriptor = parse_descriptor(j.at("descriptor"));
  r.hypotheses = hypotheses_from_json(j.at("hypotheses"));
  if (!j.at("canonical_form").is_null()) r.canonical = canonical_from_json(j["canonical_form"]);
  r.bound = bound_from_json(j.at("bound"));
  if (!j.at("verification").is_null()) r.verification = verification_from_json(j["verification"]);
  r.seconds = j.at("timing").at("seconds").get<double>();
  return r;
}

// ---- human summary ----------------------------------------------------------------

inline std::string count_word(std::size_t n) {
  static const char* words[] = {"no", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine"};
  return n < 10 ? words[n] : std::to_string(n);
}

inline std::string bound_line(const AnalysisReport& r) {
  const BoundReport& b = r.bound;
  std::ostringstream os;
  switch (b.theorem_used) {
    case Method::Inconclusive: os << "bound: inconclusive"; break;
    case Method::NoCycles_zero:
      os << "bound: 0 (" << (r.hypotheses.transversality_ok ? "condition H fails" : "no transversal crossing") << ")";
      break;
    case Method::Method_N_k_1:
      os << "bound: N+k+1 = " << *b.upper_bound << " (N=" << b.N.value_or(-1) << ", k=" << b.k.value_or(-1) << ")";
      break;
    case Method::FocusCase_k_plus_2:
      os << "upper bound: " << *b.upper_bound << " (" << describe(b.theorem_used) << ", k=" << b.k.value_or(-1) << ")";
      break;
    case Method::FocusGeneral_8_minus_ell:
      os << "upper bound: " << *b.upper_bound << " (" << describe(b.theorem_used) << ", l=" << b.ell.value_or(-1)
         << ")";
      break;
    default: os << "upper bound: " << *b.upper_bound << " (" << describe(b.theorem_used) << ")";
  }
  return os.str();
}

inline std::string human_summary(const AnalysisReport& r) {
  std::ostringstream os;
  if (!r.descriptor.name.empty()) os << r.descriptor.name << ": ";
  os << bound_line(r) << "\n";
  if (r.bound.theorem_used == Method::Method_N_k_1 || r.bound.theorem_used == Method::Inconclusive) {
    for (const auto& c : r.bound.certificates) os << "  certificate " << to_string(c.kind) << ": " << c.claim << "\n";
  }
  for (const auto& n : r.bound.notes) os << "  note: " << n << "\n";
  if (r.verification) {
    const Verification& v = *r.verification;
    os << "observed: " << v.observed_count();
    if (v.cycles.continuum) os << " isolated (continuum of periodic orbits)";
    os << ", certified: " << (v.certified_bound ? std::to_string(*v.certified_bound) : std::string("none"));
    if (v.exact_count_established()) {
      os << " (exactly " << count_word(v.observed_count()) << " limit cycle" << (v.observed_count() == 1 ? "" : "s")
         << ", exact count established)";
    }
    os << "\n";
    for (const auto& z : v.cycles.zeros) {
      char line[160];
      std::snprintf(line, sizeof line, "  cycle at y0 = %.12g: %s, %s\n", static_cast<double>(z.y0_root),
                    to_string(z.multiplicity), to_string(z.stability));
      os << line;
    }
    os << "  sign consistency: " << (v.sign_consistency ? "ok" : "FAILED") << "\n";
    if (v.exceeds_bound()) os << "  ERROR: observed count exceeds the certified bound\n";
  }
  return os.str();
}

// ---- emitted artifacts -----------------------------------------------------------

inline std::string format_real(real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
  return buf;
}

/// Columns y0, delta, delta_prime, inside_domain; failed samples carry nan.
inline void write_scan_csv(std::ostream& os, const std::vector<DisplacementSample>& scan) {
  os << "y0,delta,delta_prime,inside_domain\n";
  for (const auto& s : scan) {
    os << format_real(s.y0) << ',' << (s.inside_domain ? format_real(s.delta) : "nan") << ','
       << (s.inside_domain ? format_real(s.delta_prime) : "nan") << ',' << (s.inside_domain ? 1 : 0) << '\n';
  }
}

namespace detail {

inline json terms_json(const BiPoly& p) {
  json a = json::array();
  for (const auto& [e, c] : p.terms()) a.push_back({{"Y0", e.first}, {"Y1", e.second}, {"coeff", c.to_string()}});
  return a;
}

/// "200*Y1 - 117" for the root 117/200.
inline std::string linear_factor_string(const Rational& root) {
  std::ostringstream os;
  const std::string den = root.denominator().get_str();
  const mpz_class num = root.numerator();
  os << (den == "1" ? "" : den + "*") << "Y1";
  if (sgn(num) > 0) os << " - " << num.get_str();
  if (sgn(num) < 0) os << " + " << mpz_class(-num).get_str();
  return os.str();
}

}  // namespace detail

/// Exact F̃, G̃, Δ_b and R(Y₁) at b, with the known-point factor split off.
inline json conic_resultant_dump(const CanonicalForm& cf, const Rational& b) {
  const ConicF F = build_F(cf, b);
  const CubicG G = build_G(cf, b);
  json j;
  j["b"] = b.to_string();
  j["canonical_form"] = canonical_to_json(cf);
  j["m"] = detail::rationals_json(std::vector<Rational>(F.m.begin(), F.m.end()));
  j["n"] = detail::rationals_json(std::vector<Rational>(G.n.begin() + 1, G.n.end()));
  j["F_tilde"] = detail::terms_json(F.poly);
  j["G_tilde"] = detail::terms_json(G.poly);
  j["delta"] = F.delta.to_string();
  const ConicClassification cls = classify_conic(F);
  j["conic_class"] = to_string(cls.coarse);
  j["conic_detail"] = to_string(cls.detail);
  UniPoly R;
  try {
    R = resultant_R(F, G);
  } catch (const DegenerateElimination&) {
  }
  j["R"] = detail::rationals_json(R.coefficients());
  j["R_degree"] = R.is_zero() ? -1 : R.degree();
  json factor = nullptr;
  if (const auto kp = known_point(cf); kp && !R.is_zero()) {
    const Rational root = kp->second;
    const UniPoly lin({-root, Rational(1)});
    UniPoly rest = R;
    int mult = 0;
    while (true) {
      auto [q, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = q;
      ++mult;
    }
    factor = {{"root", root.to_string()},
              {"factor", detail::linear_factor_string(root)},
              {"multiplicity", mult},
              {"cofactor", detail::rationals_json(normalized(rest).coefficients())}};
  }
  j["known_point_factor"] = factor;
  return j;
}

}  // namespace pwlcycles
