// Command-line front end: claim verification, exact transform tables,
// orbit reduction, and double-coset scans.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pgl2/harness.hpp"

namespace {

using namespace pgl2;

int chi_sigma_from_flag(const std::string& flag) {
  if (flag == "+1" || flag == "1") return +1;
  if (flag == "-1") return -1;
  throw DomainError("--chi-sigma must be +1 or -1");
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open output file: " + path);
  out << content;
}

std::vector<Series> parse_matrix_entries(const std::string& spec, int p, int rel) {
  std::vector<Series> entries;
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t sep = spec.find(';', start);
    if ((i < 3) == (sep == std::string::npos)) {
      throw DomainError("--mat expects four ';'-separated Laurent expressions");
    }
    std::string piece = sep == std::string::npos ? spec.substr(start)
                                                 : spec.substr(start, sep - start);
    entries.push_back(parse_series(piece, p, rel));
    start = sep == std::string::npos ? spec.size() : sep + 1;
  }
  return entries;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact finite-level Whittaker transform for a cuspidal "
               "representation of PGL(2, F_p((t)))"};
  app.require_subcommand(1);

  // --- verify ---------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run claim verification suites");
  std::string claim = "all";
  VerifyConfig config;
  std::string chi_flag = "+1";
  std::string json_path;
  verify->add_option("claim", claim,
                     "claim id or 'all' (see --list for the registry)");
  bool list_claims = false;
  verify->add_flag("--list", list_claims, "list claim ids and exit");
  verify->add_option("--p", config.ps, "restrict the prime grid");
  verify->add_option("--k", config.ks, "restrict the congruence-level grid");
  verify->add_option("--n", config.ns, "restrict the valuation-block grid");
  verify->add_option("--prec", config.n_rel, "relative working precision");
  verify->add_option("--int-depth", config.m_int, "integration truncation depth");
  verify->add_option("--trials", config.trials, "randomized trial count");
  verify->add_option("--seed", config.seed, "RNG seed");
  verify->add_option("--chi-sigma", chi_flag, "character value on sigma: +1|-1");
  verify->add_option("--json", json_path, "also write the JSON report here");

  // --- phi-matrix / kernel-table ---------------------------------------
  int mp = 2, mk = 1, mn = 0, mprec = 0, mdepth = 0;
  std::string mformat = "json", mout;
  auto add_matrix_opts = [&](CLI::App* cmd) {
    cmd->add_option("--p", mp, "prime modulus")->required();
    cmd->add_option("--k", mk, "congruence level")->required();
    cmd->add_option("--n", mn, "valuation block");
    cmd->add_option("--prec", mprec, "relative working precision");
    cmd->add_option("--int-depth", mdepth, "integration truncation depth");
    cmd->add_option("--format", mformat, "json|csv");
    cmd->add_option("--out", mout, "output file (stdout when omitted)");
  };
  auto* phi_cmd = app.add_subcommand("phi-matrix", "exact matrix of the transform");
  add_matrix_opts(phi_cmd);
  auto* kernel_cmd = app.add_subcommand("kernel-table", "closed-form kernel matrix");
  add_matrix_opts(kernel_cmd);

  // --- orbit reduce -----------------------------------------------------
  auto* orbit = app.add_subcommand("orbit", "orbit operations");
  auto* reduce_cmd = orbit->add_subcommand("reduce", "reduce a matrix to its "
                                                     "orbit representative");
  std::string mat_spec;
  int rp = 2, rk = 1, rn = 0, rprec = 0;
  reduce_cmd->add_option("--mat", mat_spec, "e11;e12;e21;e22 (Laurent expressions)")
      ->required();
  reduce_cmd->add_option("--p", rp, "prime modulus")->required();
  reduce_cmd->add_option("--k", rk, "congruence level")->required();
  reduce_cmd->add_option("--n", rn, "valuation block");
  reduce_cmd->add_option("--prec", rprec, "relative working precision");

  // --- scan double-cosets ------------------------------------------------
  auto* scan = app.add_subcommand("scan", "stabilizer-character scans");
  auto* cosets_cmd = scan->add_subcommand("double-cosets",
                                          "exhaustive double-coset stabilizer scan");
  int sp = 2, s_min = -2, s_max = 2, s_depth = 2;
  std::string scan_json;
  cosets_cmd->add_option("--p", sp, "prime modulus")->required();
  cosets_cmd->add_option("--n-min", s_min, "lowest torus valuation")->required();
  cosets_cmd->add_option("--n-max", s_max, "highest torus valuation")->required();
  cosets_cmd->add_option("--depth", s_depth, "parameter truncation depth")->required();
  cosets_cmd->add_option("--json", scan_json, "write the scan report here");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) {
    if (list_claims) {
      for (const auto& id : claim_ids()) std::cout << id << "\n";
      return 0;
    }
    config.chi_sigma = chi_sigma_from_flag(chi_flag);
    std::vector<ClaimReport> reports;
    if (claim == "all") {
      reports = run_all(config);
    } else {
      reports.push_back(run_claim_suite(claim, config));
    }
    std::cout << emit_report(reports, ReportFormat::Table);
    if (!json_path.empty()) {
      write_or_print(json_path, emit_report(reports, ReportFormat::Json));
    }
    return all_passed(reports) ? 0 : 1;
  }

  if (phi_cmd->parsed() || kernel_cmd->parsed()) {
    LevelParams level = LevelParams::make(mp, mk, mn, mprec, mdepth);
    TransformMatrix m = phi_cmd->parsed() ? phi_matrix(level) : kernel_matrix(level);
    if (mformat == "json") {
      write_or_print(mout, m.to_json() + "\n");
    } else if (mformat == "csv") {
      write_or_print(mout, m.to_csv());
    } else {
      throw DomainError("--format must be json or csv");
    }
    return 0;
  }

  if (reduce_cmd->parsed()) {
    LevelParams level = LevelParams::make(rp, rk, rn, rprec, 0);
    auto entries = parse_matrix_entries(mat_spec, rp, level.n_rel);
    GroupElem g{entries[0], entries[1], entries[2], entries[3], false};
    BADecomposition dec = decompose_BA(g);
    std::cout << "Borel factor: A = " << dec.borel.A.to_string()
              << ", B = " << dec.borel.B.to_string() << "\n";
    std::cout << "A-side factor: sigma^" << dec.a.sigma_power
              << " * I0(a=" << dec.a.iw.a.to_string() << "; b=" << dec.a.iw.b.to_string()
              << "; c=" << dec.a.iw.c.to_string() << "; d=" << dec.a.iw.d.to_string()
              << ")\n";
    auto red = reduce_to_representative(dec.borel, level);
    if (!red) {
      std::cout << "orbit: irrelevant at level k=" << rk << "\n";
      return 0;
    }
    std::cout << "representative: " << red->rep.to_string() << "\n";
    std::cout << "corrector: I0(a=" << red->corrector.iw.a.to_string()
              << "; b=" << red->corrector.iw.b.to_string()
              << "; c=" << red->corrector.iw.c.to_string()
              << "; d=" << red->corrector.iw.d.to_string() << ")\n";
    return 0;
  }

  if (cosets_cmd->parsed()) {
    ScanReport report = double_coset_scan(sp, s_min, s_max, s_depth);
    std::ostringstream json;
    json << "{\"p\":" << report.p << ",\"n_min\":" << report.n_min
         << ",\"n_max\":" << report.n_max << ",\"depth\":" << report.depth
         << ",\"points\":[";
    for (std::size_t i = 0; i < report.results.size(); ++i) {
      const auto& r = report.results[i];
      if (i) json << ",";
      json << "{\"point\":\"" << r.point.to_string() << "\",\"passes\":"
           << (r.passes ? "true" : "false")
           << ",\"stabilizer_size\":" << r.stabilizer_size
           << ",\"in_identity_coset\":" << (r.in_identity_coset ? "true" : "false")
           << "}";
      std::cout << (r.passes ? "PASS " : "fail ") << r.point.to_string()
                << "  stabilizer=" << r.stabilizer_size
                << (r.in_identity_coset ? "  [identity coset]" : "") << "\n";
    }
    json << "]}";
    if (!scan_json.empty()) write_or_print(scan_json, json.str() + "\n");
    std::cout << "pass-set size: " << report.pass_set.size() << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
