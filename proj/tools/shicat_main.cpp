// Command-line front door: root system data, flats, subset classification,
// alcove dumps, Eulerian polynomials, characteristic quasi-polynomials,
// freeness verdicts, graph sweeps, SVG figures, and the full verification
// harness.

#include "shicat/alcoves.hpp"
#include "shicat/freeness.hpp"
#include "shicat/graphs.hpp"
#include "shicat/parallel.hpp"
#include "shicat/quasipoly.hpp"
#include "shicat/report.hpp"
#include "shicat/subsets.hpp"
#include "shicat/svg.hpp"
#include "shicat/verify.hpp"
#include "shicat/weyl.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace shicat;

namespace {

void emit(const ReportEnvelope& env, const std::string& out_path) {
  Json j = env.finalize();
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    f << text;
  }
}

Json freeness_json(const FreenessResult& r) {
  Json j;
  j["verdict"] = r.verdict_name();
  if (r.free()) {
    j["exponents"] = r.exponents;
    if (r.cert.valid) {
      j["saito_constant"] = to_string(r.cert.constant);
      // certificate hash: FNV-1a over the basis coefficient stream
      uint64_t h = 1469598103934665603ull;
      for (const Derivation& d : r.basis)
        for (const HomPoly& p : d.comps)
          for (const Int& c : p.c) {
            std::string s = c.get_str();
            for (char ch : s) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
          }
      std::ostringstream os;
      os << std::hex << h;
      j["certificate_hash"] = os.str();
    } else if (r.modular_only) {
      j["certificate"] = "Monte Carlo (single prime), not exact";
    }
  } else {
    j["reason"] = r.reason;
  }
  j["tuples_tried"] = r.tuples_tried;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations for root systems, alcoves, and Shi-Catalan arrangements"};
  app.require_subcommand(1);

  std::string system = "A2", subset_str = "", out_path = "";
  bool as_json = false, stable = false;
  uint64_t seed = 20240808;
  app.add_flag("--json", as_json, "structured output (reports are always JSON)");
  app.add_flag("--stable", stable, "omit timings for byte-identical reports");
  app.add_option("--seed", seed, "seed for randomized sweeps");
  app.add_option("--out", out_path, "write the report to a file");

  auto add_system = [&](CLI::App* cmd) {
    cmd->add_option("--system", system, "root system, e.g. A2, B3, G2, F4")->required();
  };

  auto* cmd_rootsys = app.add_subcommand("rootsys", "construct a root system and print its data");
  add_system(cmd_rootsys);

  int codim = 2;
  auto* cmd_flats = app.add_subcommand("flats", "enumerate flats of the Weyl arrangement");
  add_system(cmd_flats);
  cmd_flats->add_option("--codim", codim, "codimension (default 2)");

  auto* cmd_subsets = app.add_subcommand("subsets", "subset predicates");
  auto* cmd_classify = cmd_subsets->add_subcommand("classify", "census of subset properties");
  add_system(cmd_classify);
  bool exhaustive = false;
  long sample_n = 0;
  cmd_classify->add_flag("--exhaustive", exhaustive, "sweep all subsets");
  cmd_classify->add_option("--sample", sample_n, "number of random subsets");

  auto* cmd_alcoves = app.add_subcommand("alcoves", "alcoves of the fundamental parallelepiped");
  add_system(cmd_alcoves);

  auto* cmd_euler = app.add_subcommand("eulerian", "Eulerian polynomial of a subset");
  add_system(cmd_euler);
  cmd_euler->add_option("--subset", subset_str, "roots like \"[1,0],[1,1]\" or all/none");

  long qmax = 30;
  auto* cmd_quasi = app.add_subcommand("quasipoly", "characteristic quasi-polynomial of a subset");
  add_system(cmd_quasi);
  cmd_quasi->add_option("--subset", subset_str,
                        "roots like \"[1,0],[1,1]\", all, none, or all-subsets");
  cmd_quasi->add_option("--qmax", qmax, "verification range (default 30)");

  std::string k_list = "1,2", mode = "exact";
  bool scan_localizations = false;
  auto* cmd_free = app.add_subcommand("freeness", "freeness of the interpolating cones");
  add_system(cmd_free);
  cmd_free->add_option("--subset", subset_str, "roots like \"[0,1,0],[0,1,2]\" or all/none");
  cmd_free->add_option("--k", k_list, "comma-separated k values (default 1,2)");
  cmd_free->add_option("--mode", mode, "exact|modular");
  cmd_free->add_flag("--scan-localizations", scan_localizations,
                     "report freeness of codim <= 4 localizations (informative only)");

  auto* cmd_graphs = app.add_subcommand("graphs", "type-A graph correspondence");
  int gn = 4;
  auto* cmd_corr = cmd_graphs->add_subcommand("verify-corollary", "three-way equivalence sweep");
  cmd_corr->add_option("--n", gn, "number of vertices (3..5)")->required();
  std::string edges;
  auto* cmd_interval = cmd_graphs->add_subcommand("interval", "interval test for one graph");
  cmd_interval->add_option("--n", gn, "number of vertices")->required();
  cmd_interval->add_option("--edges", edges, "edge list like 1-2,2-3");

  auto* cmd_figure = app.add_subcommand("figure", "SVG of a rank-2 Worpitzky partition");
  add_system(cmd_figure);

  std::string scope_str = "full";
  auto* cmd_verify = app.add_subcommand("verify-all", "run the acceptance criteria");
  cmd_verify->add_option("--scope", scope_str, "quick|full (default full)");

  for (CLI::App* sc : {cmd_rootsys, cmd_flats, cmd_subsets, cmd_classify, cmd_alcoves, cmd_euler,
                       cmd_quasi, cmd_free, cmd_graphs, cmd_corr, cmd_interval, cmd_figure,
                       cmd_verify})
    sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  auto t0 = std::chrono::steady_clock::now();
  ReportEnvelope env;
  env.stable = stable;
  int exit_code = 0;

  try {
    if (*cmd_rootsys) {
      RootSystem rs = build(system);
      env.command = "rootsys";
      env.body["system"] = rs.type.name();
      env.body["rank"] = rs.rank;
      env.body["positive_roots"] = json_roots(rs, full_positive_set(rs));
      env.body["highest_root"] = rs.highest_root.str();
      env.body["marks"] = rs.marks;
      env.body["coxeter_number"] = rs.coxeter_number;
      env.body["index_of_connection"] = rs.index_of_connection;
      env.body["weyl_order"] = rs.weyl_order;
      env.body["cartan"] = rs.cartan;
      env.body["gram"] = rs.gram;
    } else if (*cmd_flats) {
      RootSystem rs = build(system);
      env.command = "flats";
      Json arr = Json::array();
      for (const Flat& f : flats_codim(rs, codim)) {
        Json jf;
        jf["codim"] = f.codim;
        jf["type"] = f.type_name;
        jf["irreducible"] = f.irreducible;
        jf["simple_system"] = json_roots(rs, f.simple_system);
        jf["roots"] = json_roots(rs, f.roots);
        arr.push_back(jf);
      }
      env.body["system"] = rs.type.name();
      env.body["codim"] = codim;
      env.body["count"] = arr.size();
      env.body["flats"] = arr;
    } else if (*cmd_classify) {
      RootSystem rs = build(system);
      SubsetAnalyzer an(rs);
      env.command = "subsets classify";
      size_t n = rs.num_positive();
      std::vector<std::vector<int>> universe;
      if (exhaustive || (sample_n == 0 && n <= 12)) {
        if (n > 20) throw std::runtime_error("exhaustive sweep too large; use --sample");
        universe = verify_detail::all_subsets(rs);
      } else {
        Rng rng(seed);
        universe = verify_detail::random_subsets(rs, sample_n ? sample_n : 1000, rng);
      }
      std::map<std::string, long> counts = {{"ideal", 0},           {"coclosed", 0},
                                            {"neg_coclosed", 0},    {"compatible", 0},
                                            {"two_loc_compatible", 0}, {"two_loc_simple", 0}};
      long chain_violations = 0;
      Json samples = Json::array();
      for (const auto& s : universe) {
        PropertyReport rep = an.classify(s);
        counts["ideal"] += rep.ideal;
        counts["coclosed"] += rep.coclosed;
        counts["neg_coclosed"] += rep.neg_coclosed;
        counts["compatible"] += rep.compatible;
        counts["two_loc_compatible"] += rep.two_loc_compatible;
        counts["two_loc_simple"] += rep.two_loc_simple;
        if (!rep.chain_consistent()) ++chain_violations;
        if (samples.size() < 3 && !rep.witnesses.empty()) {
          Json w;
          w["subset"] = json_roots(rs, s);
          w["witnesses"] = rep.witnesses;
          samples.push_back(w);
        }
      }
      env.body["system"] = rs.type.name();
      env.body["subsets_examined"] = universe.size();
      env.body["seed"] = seed;
      Json jc;
      for (auto& [k, v] : counts) jc[k] = v;
      env.body["counts"] = jc;
      env.body["chain_violations"] = chain_violations;
      env.body["witness_samples"] = samples;
      if (chain_violations) exit_code = 1;
    } else if (*cmd_alcoves) {
      RootSystem rs = build(system);
      const AlcoveComplex& cx = alcove_complex(rs);
      env.command = "alcoves";
      env.body["system"] = rs.type.name();
      env.body["count"] = cx.alcoves().size();
      env.body["weyl_order_over_f"] = rs.weyl_order / rs.index_of_connection;
      Json arr = Json::array();
      for (const Alcove& a : cx.alcoves()) {
        Json ja;
        Json addr = Json::object();
        for (size_t g = 0; g < rs.num_positive(); ++g)
          addr[rs.positive_roots[g].str()] = a.address[g];
        ja["address"] = addr;
        Json verts = Json::array();
        for (const Point& v : a.vertices) {
          Json jv = Json::array();
          for (const Rat& c : v) jv.push_back(to_string(c));
          verts.push_back(jv);
        }
        ja["vertices"] = verts;
        Json walls = Json::array();
        for (const Wall& w : a.walls) {
          Json jw;
          jw["root"] = rs.positive_roots[w.root_idx].str();
          jw["level"] = w.level;
          jw["kind"] = w.kind == WallKind::Ceiling ? "ceiling"
                       : w.kind == WallKind::Floor ? "floor"
                                                   : "through-origin";
          walls.push_back(jw);
        }
        ja["walls"] = walls;
        arr.push_back(ja);
      }
      env.body["alcoves"] = arr;
    } else if (*cmd_euler) {
      RootSystem rs = build(system);
      WeylGroup W(rs);
      std::vector<int> sigma = parse_subset(rs, subset_str);
      env.command = "eulerian";
      env.body["system"] = rs.type.name();
      env.body["subset"] = json_roots(rs, sigma);
      env.body["coefficients"] = W.eulerian_polynomial(sigma);
      env.body["coxeter_number"] = rs.coxeter_number;
      env.body["index_of_connection"] = rs.index_of_connection;
      env.body["weyl_order"] = rs.weyl_order;
    } else if (*cmd_quasi) {
      RootSystem rs = build(system);
      env.command = "quasipoly";
      env.body["system"] = rs.type.name();
      Json results = Json::array();
      std::vector<std::vector<int>> sigmas;
      if (subset_str == "all-subsets")
        sigmas = verify_detail::all_subsets(rs);
      else
        sigmas.push_back(parse_subset(rs, subset_str));
      WeylGroup W(rs);
      for (const auto& sigma : sigmas) {
        IntegralArrangement arr = from_subset(rs, sigma);
        long period = sigma.empty() ? 1 : period_candidate(arr);
        long fit_range = std::max(qmax, period * (rs.rank + 3));
        QuasiPolynomial qp = characteristic_quasipoly(arr, fit_range);
        IdentityReport rep = verify_identity(rs, W, sigma, qmax);
        Json r;
        r["subset"] = json_roots(rs, sigma);
        r["period"] = qp.period;
        Json cons = Json::array();
        for (const auto& c : qp.constituents) cons.push_back(json_poly(c));
        r["constituents"] = cons;
        r["counts"] = rep.counts;
        r["counting_identity"] = rep.counting_identity;
        if (!rep.counting_identity) r["first_failure_q"] = rep.first_failure_q;
        r["series_identity"] = rep.series_identity;
        r["eulerian"] = rep.eulerian;
        results.push_back(r);
      }
      env.body["qmax"] = qmax;
      env.body["results"] = results;
    } else if (*cmd_free) {
      RootSystem rs = build(system);
      SubsetAnalyzer an(rs);
      std::vector<int> sigma = parse_subset(rs, subset_str);
      bool modular = (mode == "modular");
      env.command = "freeness";
      env.body["system"] = rs.type.name();
      env.body["subset"] = json_roots(rs, sigma);
      env.body["mode"] = modular ? "modular (Monte Carlo)" : "exact";
      Json per_k = Json::array();
      FreenessResult sub = is_free_subset(rs, sigma);
      bool predicate = sub.free() && an.is_2loc_simple(sigma);
      bool exact_range = rs.rank <= 3 || modular;
      std::stringstream ks(k_list);
      std::string tok;
      bool all_free = true;
      while (std::getline(ks, tok, ',')) {
        int k = std::stoi(tok);
        Json jk;
        jk["k"] = k;
        if (exact_range || k == 0) {
          FreenessResult r = is_free_shi_cone(rs, k, sigma, ShiSign::Plus, modular);
          Json details = freeness_json(r);
          for (auto& [key, val] : details.items()) jk[key] = val;
          all_free = all_free && r.free();
        } else {
          jk["verdict"] = predicate ? "Free (predicate only)" : "NotFree (predicate only)";
          jk["note"] =
              "rank above the exact Saito range; verdict from the free-and-2-locally-simple "
              "characterization";
          all_free = all_free && predicate;
        }
        per_k.push_back(jk);
      }
      env.body["per_k"] = per_k;
      env.body["subset_arrangement"] = freeness_json(sub);
      env.body["two_loc_simple"] = an.is_2loc_simple(sigma);
      env.body["predicate_shi_free"] = predicate;
      env.body["saito_shi_free"] = all_free;
      env.body["saito_range"] = exact_range;
      if (scan_localizations) {
        CentralArrangement cone = shi_cone(rs, 1, sigma);
        Json scan = Json::array();
        for (const LatticeFlat& f : intersection_lattice(cone)) {
          if (f.codim < 2 || f.codim > 4) continue;
          std::vector<std::vector<long long>> forms;
          for (int i = 0; i < static_cast<int>(cone.size()); ++i)
            if (f.mask.get(i)) forms.push_back(cone.forms[i]);
          CentralArrangement local = CentralArrangement::from_forms(cone.nvars, forms);
          FreenessResult lr = is_free_dense(local);
          Json jl;
          jl["codim"] = f.codim;
          jl["hyperplanes"] = local.size();
          jl["verdict"] = lr.verdict_name();
          scan.push_back(jl);
        }
        env.body["localization_scan"] = scan;
      }
    } else if (*cmd_corr) {
      env.command = "graphs verify-corollary";
      CorollaryReport rep = verify_interval_corollary(gn);
      env.body["n"] = rep.n;
      env.body["graphs_checked"] = rep.graphs_checked;
      env.body["interval_count"] = rep.interval_count;
      env.body["equivalence_holds"] = rep.equivalence_holds;
      if (!rep.equivalence_holds) exit_code = 1;
    } else if (*cmd_interval) {
      env.command = "graphs interval";
      SimpleGraph g = SimpleGraph::parse(gn, edges);
      std::vector<int> order;
      bool interval = has_interval_ordering(g, &order);
      env.body["n"] = gn;
      env.body["edges"] = edges;
      env.body["interval"] = interval;
      if (interval) env.body["ordering"] = order;
      env.body["chordal"] = is_chordal(g);
      if (gn >= 2 && gn <= 5) {
        RootSystem rs = build(RootSystemType{'A', gn - 1});
        env.body["sigma_identity_labeling"] =
            json_roots(rs, sigma_of(rs, g, identity_labeling(gn)));
      }
    } else if (*cmd_figure) {
      RootSystem rs = build(system);
      std::string svg = render_rank2_svg(rs);
      if (out_path.empty()) {
        std::cout << svg;
        return 0;
      }
      std::ofstream f(out_path);
      f << svg;
      std::cerr << "wrote " << out_path << "\n";
      return 0;
    } else if (*cmd_verify) {
      env.command = "verify-all";
      VerifyScope scope = (scope_str == "quick") ? VerifyScope::Quick : VerifyScope::Full;
      VerifySummary sum = verify_all(scope, seed);
      Json arr = Json::array();
      for (const CriterionResult& cr : sum.results) {
        std::cerr << "[" << cr.id << "] " << (cr.pass ? "PASS" : "FAIL") << " - " << cr.title
                  << " (" << cr.elapsed_ms << " ms)\n";
        for (const std::string& n : cr.notes) std::cerr << "    " << n << "\n";
        Json jc;
        jc["id"] = cr.id;
        jc["title"] = cr.title;
        jc["pass"] = cr.pass;
        jc["notes"] = cr.notes;
        if (!stable) jc["elapsed_ms"] = cr.elapsed_ms;
        arr.push_back(jc);
      }
      env.body["scope"] = scope_str;
      env.body["seed"] = seed;
      env.body["criteria"] = arr;
      env.body["all_pass"] = sum.all_pass;
      if (!sum.all_pass) exit_code = 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  env.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  (void)as_json;
  emit(env, out_path);
  return exit_code;
}
