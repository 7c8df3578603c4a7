#include "khlab/fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "khlab/envelope.hpp"
#include "khlab/error.hpp"
#include "khlab/hilbert.hpp"

namespace khlab {

namespace {

std::string point_list(const std::vector<LatticePoint>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ",";
    s += "(";
    for (std::size_t j = 0; j < pts[i].size(); ++j) s += (j ? "," : "") + std::to_string(pts[i][j]);
    s += ")";
  }
  return s + "}";
}

std::string phi_list(const FitRecord& f, int from, int to) {
  std::string s;
  for (int t = from; t <= to; ++t) s += (t > from ? "," : "") + f.phi_values.at(t).get_str();
  return s;
}

std::string degree_string(const AnalysisEnvelope& e) {
  if (e.degree_volume && *e.degree_volume != e.degree_snf)
    return "volume " + e.degree_volume->get_str() + " vs snf " + e.degree_snf.get_str();
  return e.degree_snf.get_str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string bound_value(const AnalysisEnvelope& e, const std::string& name) {
  for (const auto& b : e.bounds.entries)
    if (b.name == name) return b.applicable && b.value ? b.value->get_str() : "n/a";
  return "missing";
}

FixtureValues subset_values(const AnalysisEnvelope& e) {
  return {{"p", e.fit.polynomial.pretty},
          {"n0", std::to_string(e.fit.n0)},
          {"degree", degree_string(e)},
          {"volume", e.volume.get_str()}};
}

std::vector<LatticePoint> full_simplex(int n, Coord d) {
  std::vector<LatticePoint> out;
  LatticePoint p(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int j, Coord left) -> void {
    if (j == n) {
      out.push_back(p);
      return;
    }
    for (Coord v = 0; v <= left; ++v) {
      p[j] = v;
      self(self, j + 1, left - v);
    }
    p[j] = 0;
  };
  rec(rec, 0, d);
  return out;
}

Fixture subset_fixture(std::string id, std::string description, std::vector<LatticePoint> pts,
                       std::vector<std::pair<std::string, std::string>> expected,
                       bool with_phi = false) {
  return {std::move(id), std::move(description), std::move(expected),
          [pts = std::move(pts), with_phi](const FoldOptions& fold) {
            AnalyzeOptions opts;
            opts.fold = fold;
            const AnalysisEnvelope e = analyze_subset(pts, opts);
            FixtureValues v = subset_values(e);
            if (with_phi) v["phi(1..4)"] = phi_list(e.fit, 1, 4);
            return v;
          }};
}

}  // namespace

std::vector<Fixture> builtin_fixtures() {
  std::vector<Fixture> c;
  c.push_back(subset_fixture("sumset-a1", "four points whose sumsets stabilise late",
                             {{0, 0}, {3, 0}, {2, 2}, {0, 1}},
                             {{"phi(1..4)", "4,10,20,35"},
                              {"p", "4t^2 - 16t + 36"},
                              {"n0", "5"},
                              {"degree", "8"}},
                             true));
  c.push_back(subset_fixture("sumset-a2", "one point moved: polynomial from the start",
                             {{0, 0}, {2, 0}, {2, 2}, {0, 1}},
                             {{"phi(1..4)", "4,10,19,31"},
                              {"p", "(3t^2 + 3t + 2)/2"},
                              {"n0", "0"},
                              {"degree", "3"}},
                             true));
  c.push_back(subset_fixture("projection-five-point", "five-point surface of degree 8",
                             {{0, 0}, {3, 0}, {2, 0}, {2, 2}, {0, 1}},
                             {{"p", "4t^2 - 2t + 3"}, {"n0", "1"}, {"degree", "8"}}));
  c.push_back(subset_fixture("projection-a0", "projection from a double point, degree 6",
                             {{3, 0}, {2, 0}, {2, 2}, {0, 1}},
                             {{"p", "3t^2 - 6t + 11"}, {"n0", "3"}, {"degree", "6"}}));
  c.push_back({"veronese", "full simplices: phi(t) = C(n+dt, n), degree d^n",
               {{"n=2 d=4 degree", "16"},
                {"n=2 d=4 n0", "0"},
                {"n=2 d=4 p = C(4t+2,2)", "yes"},
                {"n=3 d=2 degree", "8"},
                {"n=3 d=2 n0", "0"},
                {"n=3 d=2 p = C(2t+3,3)", "yes"}},
               [](const FoldOptions& fold) {
                 FixtureValues v;
                 AnalyzeOptions opts;
                 opts.fold = fold;
                 for (auto [n, d] : {std::pair<int, Coord>{2, 4}, {3, 2}}) {
                   const AnalysisEnvelope e = analyze_subset(full_simplex(n, d), opts);
                   const std::string key = "n=" + std::to_string(n) + " d=" + std::to_string(d);
                   const RationalPolynomial expected = RationalPolynomial::binomial(
                       mpz_class(static_cast<long>(d)), n, static_cast<unsigned long>(n));
                   v[key + " degree"] = degree_string(e);
                   v[key + " n0"] = std::to_string(e.fit.n0);
                   v[key + " p = C(" + std::to_string(d) + "t+" + std::to_string(n) + "," +
                     std::to_string(n) + ")"] = yes_no(e.fit.polynomial == record(expected));
                 }
                 return v;
               }});
  c.push_back(subset_fixture(
      "nine-point-cubic", "all points of degree at most 3 except (1,1)",
      {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}},
      {{"p", "(9t^2 + 9t + 2)/2"}, {"n0", "2"}, {"degree", "9"}}));
  c.push_back(subset_fixture("four-point-cubic", "simplex corners and the centre",
                             {{0, 0}, {1, 1}, {3, 0}, {0, 3}},
                             {{"p", "(3t^2 + 3t + 2)/2"}, {"n0", "0"}, {"degree", "3"}}));
  c.push_back(subset_fixture("degree-two-surface", "four points of degree 4 spanning an index-8 lattice",
                             {{2, 2}, {2, 0}, {1, 2}, {0, 4}},
                             {{"p", "t^2 + 2t + 1"}, {"n0", "0"}, {"degree", "2"}}));
  c.push_back({"congruence-d5", "GT-subset of y_1 + 2y_2 = 0 mod 5 and its bounds",
               {{"A", "{(0,0),(0,5),(1,2),(3,1),(5,0)}"},
                {"volume", "25/2"},
                {"p", "(5t^2 + 3t + 2)/2"},
                {"n0", "0"},
                {"K(A,B)", "2"},
                {"r(A)", "2"},
                {"bound effective-khovanskii", "5"},
                {"bound k-ab", "4"},
                {"bound hoa-stuckrad-cm", "4"},
                {"bound reduction-number", "3"}},
               [](const FoldOptions& fold) {
                 AnalyzeOptions opts;
                 opts.fold = fold;
                 opts.flags.cohen_macaulay = true;
                 const CongruenceSystem sys{2, {5}, {{0, 1, 2}}};
                 const AnalysisEnvelope e = analyze_gt(sys, opts, false);
                 FixtureValues v = subset_values(e);
                 v["A"] = point_list(e.points);
                 const FiniteSubset a = FiniteSubset::normalize(e.points);
                 int k = 0;
                 for (const auto& hp : b_minimal_elements(a, static_cast<int>(a.dim()), fold))
                   k = std::max(k, hp.height);
                 v["K(A,B)"] = std::to_string(k);
                 v["r(A)"] = e.bounds.reduction_number ? std::to_string(*e.bounds.reduction_number)
                                                       : "n/a";
                 for (const char* name :
                      {"effective-khovanskii", "k-ab", "hoa-stuckrad-cm", "reduction-number"})
                   v[std::string("bound ") + name] = bound_value(e, name);
                 return v;
               }});
  c.push_back({"rl-final", "GT-subset for d = 3 and the complement of its interior points",
               {{"A", "{(0,0),(0,3),(1,1),(3,0)}"},
                {"rl(A)", "{(1,1)}"},
                {"|rl(A)^c|", "9"},
                {"rl(A)^c = nine-point set", "yes"},
                {"RL degree", "9"},
                {"RL n0", "2"},
                {"RL regularity bound", "3"},
                {"GT bound", "3"}},
               [](const FoldOptions& fold) {
                 AnalyzeOptions opts;
                 opts.fold = fold;
                 const CongruenceSystem sys{2, {3}, {{0, 1, 2}}};
                 const AnalysisEnvelope e = analyze_gt(sys, opts, true);
                 const RlRecord& rl = *e.gt->rl;
                 FixtureValues v;
                 v["A"] = point_list(e.points);
                 v["rl(A)"] = point_list(rl.rl);
                 v["|rl(A)^c|"] = std::to_string(rl.complement_size);
                 std::vector<LatticePoint> rest;
                 for (const auto& p : full_simplex(2, 3))
                   if (p != LatticePoint{1, 1}) rest.push_back(p);
                 const GtSubset g = gt_subset(sys);
                 v["rl(A)^c = nine-point set"] =
                     yes_no(rl_sets(g).complement == FiniteSubset::normalize(rest));
                 v["RL degree"] = rl.report.degree_volume == rl.report.degree_snf
                                      ? rl.report.degree_volume.get_str()
                                      : "volume " + rl.report.degree_volume.get_str() +
                                            " vs snf " + rl.report.degree_snf.get_str();
                 v["RL n0"] = std::to_string(rl.report.observed_n0);
                 v["RL regularity bound"] = rl.report.regularity_bound.get_str();
                 v["GT bound"] = bound_value(e, "gt");
                 return v;
               }});
  return c;
}

FixtureResult run_fixture(const Fixture& f, const FoldOptions& opts) {
  FixtureResult r{f.id, f.description, {}, {}, false};
  FixtureValues got;
  try {
    got = f.compute(opts);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.pass = r.error.empty();
  for (const auto& [q, want] : f.expected) {
    const auto it = got.find(q);
    FixtureCheck c{q, want, it == got.end() ? "<missing>" : it->second, false};
    c.pass = it != got.end() && it->second == want;
    r.pass = r.pass && c.pass;
    r.checks.push_back(std::move(c));
  }
  return r;
}

std::vector<FixtureResult> run_fixtures(const std::vector<Fixture>& corpus,
                                        const std::string& filter, const FoldOptions& opts,
                                        unsigned threads) {
  std::vector<const Fixture*> chosen;
  for (const auto& f : corpus)
    if (f.id.find(filter) != std::string::npos) chosen.push_back(&f);
  std::vector<FixtureResult> out(chosen.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < chosen.size();) out[i] = run_fixture(*chosen[i], opts);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, chosen.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::string render_fixture_table(const std::vector<FixtureResult>& results) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : results) {
    os << (r.pass ? "PASS " : "FAIL ") << r.id << "  (" << r.description << ")\n";
    if (!r.error.empty()) os << "     error: " << r.error << "\n";
    for (const auto& c : r.checks) {
      os << "     " << (c.pass ? "ok  " : "DIFF") << "  " << c.quantity << ": expected "
         << c.expected;
      if (c.pass)
        os << "\n";
      else
        os << ", computed " << c.computed << "\n";
    }
    passed += r.pass;
  }
  os << passed << "/" << results.size() << " fixtures passed\n";
  return os.str();
}

}  // namespace khlab
