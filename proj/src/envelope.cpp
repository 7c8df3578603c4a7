#include "khlab/envelope.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "khlab/error.hpp"
#include "khlab/geometry.hpp"
#include "khlab/lattice.hpp"

using json = nlohmann::json;

namespace nlohmann {

template <>
struct adl_serializer<mpz_class> {
  static void to_json(json& j, const mpz_class& z) { j = z.get_str(); }
  static void from_json(const json& j, mpz_class& z) { z = mpz_class(j.get<std::string>()); }
};

template <>
struct adl_serializer<mpq_class> {
  static void to_json(json& j, const mpq_class& q) {
    j = json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
  }
  static void from_json(const json& j, mpq_class& q) {
    q = mpq_class(mpz_class(j.at("num").get<std::string>()),
                  mpz_class(j.at("den").get<std::string>()));
    q.canonicalize();
  }
};

}  // namespace nlohmann

namespace khlab {

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

CertifyPolicy make_policy(const AnalyzeOptions& opts, const BoundsReport& bounds) {
  std::optional<long> best;
  if (bounds.best_applicable && bounds.best_applicable->fits_slong_p())
    best = bounds.best_applicable->get_si();
  CertifyPolicy p{opts.certify, opts.window, best};
  if (opts.certify == Certification::WindowHeuristic) p.bound.reset();
  return p;
}

FitRecord fit_record(const GrowthAnalysis& g) {
  FitRecord f;
  f.phi_values = g.phi_values;
  f.polynomial = record(g.polynomial);
  f.n0 = g.n0;
  f.certification = to_string(g.certification);
  if (g.certification == Certification::WindowHeuristic) f.window = g.window;
  f.bound = g.bound;
  if (g.gotzmann) {
    f.gotzmann_s = g.gotzmann->s;
    for (const auto& [a, k] : g.gotzmann->runs) f.gotzmann_runs.push_back({a, k});
  }
  f.note = g.note;
  f.degree = g.degree;
  return f;
}

AnalysisEnvelope analyze_core(const FiniteSubset& a, const AnalyzeOptions& opts,
                              const CongruenceSystem* sys, GrowthAnalysis* fit_out) {
  AnalysisEnvelope env;
  env.dim = a.dim();
  env.points = a.points();
  env.translation = a.translation();
  env.degree_bound = a.degree();
  env.simplicial = a.is_simplicial();

  const DifferenceLattice dl = difference_lattice(a);
  env.rank = dl.rank;
  env.index = dl.index;

  env.volume = hull_volume(a.points());
  if (dl.index) env.degree_volume = degree_via_volume(a);
  env.degree_snf = degree_via_snf(a);
  env.degrees_agree = !env.degree_volume || *env.degree_volume == env.degree_snf;

  env.bounds = collect_bounds(a, opts.flags, sys, opts.fold);

  FoldPhiSource src(a, opts.fold);
  FitOptions fo;
  fo.t_max = opts.t_max;
  fo.max_points = opts.fold.max_points;
  const GrowthAnalysis g =
      fit_khovanskii(src, static_cast<int>(dl.rank), make_policy(opts, env.bounds), fo);
  env.fit = fit_record(g);

  const GrowthCheck mc = check_macaulay_growth(g.phi_values);
  env.macaulay_ok = mc.ok;
  env.macaulay_first_violation = mc.first_violation;
  env.gotzmann_ok = g.gotzmann.has_value();
  env.leading_matches_degree = g.degree > 0 && g.degree == env.degree_snf &&
                               (!env.degree_volume || g.degree == *env.degree_volume);

  if (const auto cf = closed_form_small(a)) {
    env.closed_form = ClosedFormRecord{record(cf->polynomial), cf->n0, cf->degree,
                                       cf->polynomial == g.polynomial && cf->n0 == g.n0};
  }
  check_soundness(env.bounds, g);
  if (fit_out) *fit_out = g;
  return env;
}

template <class F>
FormulaCheck formula_check(F&& build, const RationalPolynomial& fitted) {
  FormulaCheck c;
  try {
    const RationalPolynomial p = build(c);
    c.applicable = true;
    c.polynomial = record(p);
    c.agrees = p == fitted;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ShapeMismatch) throw;
    c.note = e.what();
  }
  return c;
}

}  // namespace

void parse_certify(const std::string& text, AnalyzeOptions& opts) {
  if (text == "gotzmann") {
    opts.certify = Certification::GotzmannExact;
  } else if (text == "bounds") {
    opts.certify = Certification::BoundCertified;
  } else if (text.rfind("window=", 0) == 0) {
    const std::string w = text.substr(7);
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(w, &used);
    } catch (const std::exception&) {
    }
    if (w.empty() || used != w.size() || v < 0)
      throw Error(ErrorKind::InvalidInput, "window size must be a nonnegative integer: " + text);
    opts.certify = Certification::WindowHeuristic;
    opts.window = v;
  } else {
    throw Error(ErrorKind::InvalidInput,
                "certify must be gotzmann, bounds or window=W, got '" + text + "'");
  }
}

PolynomialRecord record(const RationalPolynomial& p) {
  return {p.coefficients(), p.pretty()};
}

AnalysisEnvelope analyze_subset(const std::vector<LatticePoint>& raw, const AnalyzeOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisEnvelope env = analyze_core(FiniteSubset::normalize(raw), opts, nullptr, nullptr);
  env.kind = "subset";
  env.input_points = raw;
  env.elapsed_ms = elapsed_since(start);
  return env;
}

AnalysisEnvelope analyze_gt(const CongruenceSystem& sys, const AnalyzeOptions& opts,
                            bool with_rl) {
  const auto start = std::chrono::steady_clock::now();
  sys.validate();
  const GtSubset g = gt_subset(sys);
  GrowthAnalysis fit;
  AnalysisEnvelope env = analyze_core(g.a, opts, &sys, &fit);
  env.kind = "gt";
  env.system = sys;

  GtRecord rec;
  rec.level_one_size = g.a_bar.size();
  constexpr int kCheckLevels = 5;
  const std::vector<std::uint64_t> folded = phi_values(g.a, kCheckLevels, opts.fold);
  rec.counts_agree = true;
  for (int t = 0; t <= kCheckLevels; ++t) {
    rec.dp_counts.push_back(solve_level_count(sys, t));
    rec.fold_counts.emplace_back(static_cast<unsigned long>(folded[t]));
    rec.counts_agree = rec.counts_agree && rec.dp_counts.back() == rec.fold_counts.back();
  }
  for (int t = 0; t <= kCheckLevels; ++t) {
    try {
      rec.enumerated_counts.emplace_back(static_cast<unsigned long>(
          solve_level_enumerate(sys, t, opts.fold.max_points).size()));
    } catch (const ResourceCapError&) {
      break;
    }
    rec.counts_agree = rec.counts_agree && rec.enumerated_counts.back() == rec.dp_counts[t];
  }

  const RationalPolynomial& p = fit.polynomial;
  rec.surface = formula_check(
      [&](FormulaCheck& c) {
        c.theta = gt_surface_theta(sys);
        return gt_surface_polynomial(sys);
      },
      p);
  rec.prime = formula_check([&](FormulaCheck&) { return gt_prime_polynomial(sys); }, p);
  rec.n0_bound = sys.n + 1;
  rec.n0_within_bound = fit.n0 <= rec.n0_bound;

  if (with_rl) {
    const RlSets rl = rl_sets(g);
    rec.rl = RlRecord{rl.rl, rl.complement.size(),
                      rl_checks(rl.complement, sys.n, sys.d(), rl.rl.size(), opts.fold)};
  }
  env.gt = std::move(rec);
  env.elapsed_ms = elapsed_since(start);
  return env;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw Error(ErrorKind::InvalidInput, "format must be json, csv or text, got '" + s + "'");
}

// JSON mapping

void to_json(json& j, const PolynomialRecord& p) {
  j = json{{"coefficients", p.coefficients}, {"pretty", p.pretty}};
}
void from_json(const json& j, PolynomialRecord& p) {
  j.at("coefficients").get_to(p.coefficients);
  j.at("pretty").get_to(p.pretty);
}

void to_json(json& j, const GotzmannRun& r) {
  j = json{{"exponent", r.exponent}, {"count", r.count}};
}
void from_json(const json& j, GotzmannRun& r) {
  j.at("exponent").get_to(r.exponent);
  j.at("count").get_to(r.count);
}

void to_json(json& j, const FitRecord& f) {
  j = json{{"phi_values", f.phi_values},
           {"polynomial", f.polynomial},
           {"n0", f.n0},
           {"certification", f.certification},
           {"window", opt(f.window)},
           {"bound", opt(f.bound)},
           {"gotzmann_s", opt(f.gotzmann_s)},
           {"gotzmann_runs", f.gotzmann_runs},
           {"note", f.note},
           {"degree", f.degree}};
}
void from_json(const json& j, FitRecord& f) {
  j.at("phi_values").get_to(f.phi_values);
  j.at("polynomial").get_to(f.polynomial);
  j.at("n0").get_to(f.n0);
  j.at("certification").get_to(f.certification);
  f.window = get_opt<int>(j, "window");
  f.bound = get_opt<long>(j, "bound");
  f.gotzmann_s = get_opt<mpz_class>(j, "gotzmann_s");
  j.at("gotzmann_runs").get_to(f.gotzmann_runs);
  j.at("note").get_to(f.note);
  j.at("degree").get_to(f.degree);
}

void to_json(json& j, const ClosedFormRecord& c) {
  j = json{{"polynomial", c.polynomial}, {"n0", c.n0}, {"degree", c.degree}, {"agrees", c.agrees}};
}
void from_json(const json& j, ClosedFormRecord& c) {
  j.at("polynomial").get_to(c.polynomial);
  j.at("n0").get_to(c.n0);
  j.at("degree").get_to(c.degree);
  j.at("agrees").get_to(c.agrees);
}

void to_json(json& j, const BoundEntry& e) {
  j = json{{"name", e.name},
           {"value", opt(e.value)},
           {"applicable", e.applicable},
           {"hypothesis", e.hypothesis}};
}
void from_json(const json& j, BoundEntry& e) {
  j.at("name").get_to(e.name);
  e.value = get_opt<mpz_class>(j, "value");
  j.at("applicable").get_to(e.applicable);
  j.at("hypothesis").get_to(e.hypothesis);
}

void to_json(json& j, const FaceBound& f) { j = json{{"value", f.value}, {"face", f.face}}; }
void from_json(const json& j, FaceBound& f) {
  j.at("value").get_to(f.value);
  j.at("face").get_to(f.face);
}

void to_json(json& j, const BoundsReport& r) {
  j = json{{"entries", r.entries},
           {"best_applicable", opt(r.best_applicable)},
           {"observed_n0", opt(r.observed_n0)},
           {"observation_certified", r.observation_certified},
           {"sound", r.sound},
           {"violations", r.violations},
           {"reduction_number", opt(r.reduction_number)},
           {"face_bounds",
            {{"full_face", opt(r.face_bounds.full_face)},
             {"point_count", opt(r.face_bounds.point_count)}}}};
}
void from_json(const json& j, BoundsReport& r) {
  j.at("entries").get_to(r.entries);
  r.best_applicable = get_opt<mpz_class>(j, "best_applicable");
  r.observed_n0 = get_opt<int>(j, "observed_n0");
  j.at("observation_certified").get_to(r.observation_certified);
  j.at("sound").get_to(r.sound);
  j.at("violations").get_to(r.violations);
  r.reduction_number = get_opt<int>(j, "reduction_number");
  const json& fb = j.at("face_bounds");
  r.face_bounds.full_face = get_opt<FaceBound>(fb, "full_face");
  r.face_bounds.point_count = get_opt<FaceBound>(fb, "point_count");
}

void to_json(json& j, const CongruenceSystem& s) {
  j = json{{"n", s.n}, {"moduli", s.moduli}, {"rows", s.rows}};
}
void from_json(const json& j, CongruenceSystem& s) {
  j.at("n").get_to(s.n);
  j.at("moduli").get_to(s.moduli);
  j.at("rows").get_to(s.rows);
}

void to_json(json& j, const FormulaCheck& c) {
  j = json{{"applicable", c.applicable},
           {"note", c.note},
           {"polynomial", opt(c.polynomial)},
           {"theta", opt(c.theta)},
           {"agrees", c.agrees}};
}
void from_json(const json& j, FormulaCheck& c) {
  j.at("applicable").get_to(c.applicable);
  j.at("note").get_to(c.note);
  c.polynomial = get_opt<PolynomialRecord>(j, "polynomial");
  c.theta = get_opt<long>(j, "theta");
  j.at("agrees").get_to(c.agrees);
}

void to_json(json& j, const RlReport& r) {
  j = json{{"applicable", r.applicable},
           {"n", r.n},
           {"d", r.d},
           {"rl_size", r.rl_size},
           {"expected_degree", r.expected_degree},
           {"degree_volume", r.degree_volume},
           {"degree_snf", r.degree_snf},
           {"degree_ok", r.degree_ok},
           {"phi_from", r.phi_from},
           {"phi_to", r.phi_to},
           {"phi_ok", r.phi_ok},
           {"regularity_bound", r.regularity_bound},
           {"observed_n0", r.observed_n0},
           {"n0_ok", r.n0_ok},
           {"ok", r.ok()}};
}
void from_json(const json& j, RlReport& r) {
  j.at("applicable").get_to(r.applicable);
  j.at("n").get_to(r.n);
  j.at("d").get_to(r.d);
  j.at("rl_size").get_to(r.rl_size);
  j.at("expected_degree").get_to(r.expected_degree);
  j.at("degree_volume").get_to(r.degree_volume);
  j.at("degree_snf").get_to(r.degree_snf);
  j.at("degree_ok").get_to(r.degree_ok);
  j.at("phi_from").get_to(r.phi_from);
  j.at("phi_to").get_to(r.phi_to);
  j.at("phi_ok").get_to(r.phi_ok);
  j.at("regularity_bound").get_to(r.regularity_bound);
  j.at("observed_n0").get_to(r.observed_n0);
  j.at("n0_ok").get_to(r.n0_ok);
}

void to_json(json& j, const RlRecord& r) {
  j = json{{"rl", r.rl}, {"complement_size", r.complement_size}, {"report", r.report}};
}
void from_json(const json& j, RlRecord& r) {
  j.at("rl").get_to(r.rl);
  j.at("complement_size").get_to(r.complement_size);
  j.at("report").get_to(r.report);
}

void to_json(json& j, const GtRecord& g) {
  j = json{{"level_one_size", g.level_one_size},
           {"dp_counts", g.dp_counts},
           {"enumerated_counts", g.enumerated_counts},
           {"fold_counts", g.fold_counts},
           {"counts_agree", g.counts_agree},
           {"surface_formula", g.surface},
           {"prime_formula", g.prime},
           {"n0_bound", g.n0_bound},
           {"n0_within_bound", g.n0_within_bound},
           {"rl", opt(g.rl)}};
}
void from_json(const json& j, GtRecord& g) {
  j.at("level_one_size").get_to(g.level_one_size);
  j.at("dp_counts").get_to(g.dp_counts);
  j.at("enumerated_counts").get_to(g.enumerated_counts);
  j.at("fold_counts").get_to(g.fold_counts);
  j.at("counts_agree").get_to(g.counts_agree);
  j.at("surface_formula").get_to(g.surface);
  j.at("prime_formula").get_to(g.prime);
  j.at("n0_bound").get_to(g.n0_bound);
  j.at("n0_within_bound").get_to(g.n0_within_bound);
  g.rl = get_opt<RlRecord>(j, "rl");
}

namespace {

json envelope_json(const AnalysisEnvelope& e, bool with_timing) {
  json input = json::object();
  if (e.system)
    input["system"] = *e.system;
  else
    input["points"] = e.input_points;
  json j{{"kind", e.kind},
         {"input", input},
         {"normalization",
          {{"dim", e.dim},
           {"points", e.points},
           {"translation", e.translation},
           {"d_A", e.degree_bound},
           {"simplicial", e.simplicial}}},
         {"lattice", {{"rank", e.rank}, {"index", opt(e.index)}}},
         {"degree",
          {{"volume", e.volume},
           {"via_volume", opt(e.degree_volume)},
           {"via_snf", e.degree_snf},
           {"agree", e.degrees_agree}}},
         {"fit", e.fit},
         {"hilbert_laws",
          {{"macaulay_ok", e.macaulay_ok},
           {"macaulay_first_violation", opt(e.macaulay_first_violation)},
           {"gotzmann_ok", e.gotzmann_ok},
           {"leading_matches_degree", e.leading_matches_degree}}},
         {"closed_form", opt(e.closed_form)},
         {"bounds", e.bounds},
         {"gt", opt(e.gt)}};
  if (with_timing) j["timing"] = {{"elapsed_ms", e.elapsed_ms}};
  return j;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && j.contains("num") && j.contains("den") && j.size() == 2) {
    out.emplace_back(prefix, j["num"].get<std::string>() + "/" + j["den"].get<std::string>());
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render_text(const AnalysisEnvelope& e, bool with_timing) {
  std::ostringstream os;
  os << "kind: " << e.kind << "\n";
  if (e.system) os << "system: " << json(*e.system).dump() << "\n";
  os << "points (normalized): " << json(e.points).dump() << "\n";
  os << "translation: " << json(e.translation).dump() << "\n";
  os << "n = " << e.dim << ", |A| = " << e.points.size() << ", d_A = " << e.degree_bound
     << (e.simplicial ? ", simplicial" : "") << "\n";
  os << "rank " << e.rank << ", index " << (e.index ? e.index->get_str() : "infinite") << "\n";
  os << "volume " << e.volume.get_str() << ", degree (volume) "
     << (e.degree_volume ? e.degree_volume->get_str() : "n/a") << ", degree (snf) "
     << e.degree_snf.get_str() << "\n";
  os << "phi:";
  for (const auto& v : e.fit.phi_values) os << " " << v.get_str();
  os << "\n";
  os << "p(t) = " << e.fit.polynomial.pretty << "\n";
  os << "n0 = " << e.fit.n0 << " [" << e.fit.certification << "]";
  if (!e.fit.note.empty()) os << " (" << e.fit.note << ")";
  os << "\n";
  os << "Macaulay growth " << (e.macaulay_ok ? "ok" : "VIOLATED") << ", Gotzmann development "
     << (e.gotzmann_ok ? "ok" : "missing") << ", leading term vs degree "
     << (e.leading_matches_degree ? "ok" : "MISMATCH") << "\n";
  if (e.closed_form)
    os << "closed form: " << e.closed_form->polynomial.pretty << ", n0 = " << e.closed_form->n0
       << (e.closed_form->agrees ? " (agrees)" : " (DISAGREES)") << "\n";
  os << "bounds on n0:\n";
  for (const auto& b : e.bounds.entries) {
    os << "  " << b.name << ": ";
    if (b.applicable && b.value)
      os << b.value->get_str();
    else
      os << "n/a";
    os << " [" << b.hypothesis << "]\n";
  }
  if (e.bounds.best_applicable) os << "  best: " << e.bounds.best_applicable->get_str() << "\n";
  if (e.bounds.reduction_number) os << "  r(A) = " << *e.bounds.reduction_number << "\n";
  os << "  soundness: " << (e.bounds.sound ? "ok" : "VIOLATED") << "\n";
  for (const auto& v : e.bounds.violations) os << "    " << v << "\n";
  if (e.gt) {
    const GtRecord& g = *e.gt;
    os << "GT counts (t = 0..5):";
    for (const auto& v : g.dp_counts) os << " " << v.get_str();
    os << (g.counts_agree ? " (dp = enumeration = fold)" : " (MISMATCH)") << "\n";
    if (g.surface.applicable)
      os << "surface formula: " << g.surface.polynomial->pretty << ", theta = " << *g.surface.theta
         << (g.surface.agrees ? " (agrees)" : " (DISAGREES)") << "\n";
    if (g.prime.applicable)
      os << "prime formula: " << g.prime.polynomial->pretty
         << (g.prime.agrees ? " (agrees)" : " (DISAGREES)") << "\n";
    os << "n0 <= n+1 = " << g.n0_bound << ": " << (g.n0_within_bound ? "yes" : "NO") << "\n";
    if (g.rl) {
      const RlReport& r = g.rl->report;
      os << "rl(A) = " << json(g.rl->rl).dump() << ", complement size " << g.rl->complement_size
         << "\n";
      os << "RL degree " << r.degree_volume.get_str() << " / " << r.degree_snf.get_str()
         << " (expected " << r.expected_degree.get_str() << "), RL n0 = " << r.observed_n0
         << ", checks " << (r.ok() ? "ok" : "FAILED") << "\n";
    }
  }
  if (with_timing) os << "elapsed: " << e.elapsed_ms << " ms\n";
  return os.str();
}

}  // namespace

std::string to_json(const AnalysisEnvelope& env, bool with_timing) {
  return envelope_json(env, with_timing).dump(2) + "\n";
}

AnalysisEnvelope envelope_from_json(const std::string& text) {
  AnalysisEnvelope e;
  try {
    const json j = json::parse(text);
    j.at("kind").get_to(e.kind);
    const json& in = j.at("input");
    if (in.contains("system"))
      e.system = in.at("system").get<CongruenceSystem>();
    else
      in.at("points").get_to(e.input_points);
    const json& nm = j.at("normalization");
    nm.at("dim").get_to(e.dim);
    nm.at("points").get_to(e.points);
    nm.at("translation").get_to(e.translation);
    nm.at("d_A").get_to(e.degree_bound);
    nm.at("simplicial").get_to(e.simplicial);
    j.at("lattice").at("rank").get_to(e.rank);
    e.index = get_opt<mpz_class>(j.at("lattice"), "index");
    const json& dg = j.at("degree");
    dg.at("volume").get_to(e.volume);
    e.degree_volume = get_opt<mpz_class>(dg, "via_volume");
    dg.at("via_snf").get_to(e.degree_snf);
    dg.at("agree").get_to(e.degrees_agree);
    j.at("fit").get_to(e.fit);
    const json& hl = j.at("hilbert_laws");
    hl.at("macaulay_ok").get_to(e.macaulay_ok);
    e.macaulay_first_violation = get_opt<std::size_t>(hl, "macaulay_first_violation");
    hl.at("gotzmann_ok").get_to(e.gotzmann_ok);
    hl.at("leading_matches_degree").get_to(e.leading_matches_degree);
    e.closed_form = get_opt<ClosedFormRecord>(j, "closed_form");
    j.at("bounds").get_to(e.bounds);
    e.gt = get_opt<GtRecord>(j, "gt");
    if (j.contains("timing")) j.at("timing").at("elapsed_ms").get_to(e.elapsed_ms);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("parse error: envelope: ") + ex.what());
  }
  return e;
}

std::string render(const AnalysisEnvelope& env, OutputFormat fmt, bool with_timing) {
  switch (fmt) {
    case OutputFormat::Json:
      return to_json(env, with_timing);
    case OutputFormat::Csv: {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(envelope_json(env, with_timing), "", rows);
      std::string out = "field,value\n";
      for (const auto& [k, v] : rows) out += csv_field(k) + "," + csv_field(v) + "\n";
      return out;
    }
    case OutputFormat::Text:
      return render_text(env, with_timing);
  }
  return {};
}

}  // namespace khlab
