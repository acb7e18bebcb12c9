// stabhom command line: batch verification suites plus one-off complex and
// module computations.  Reports print as a human table on stdout; --out
// writes the byte-stable JSON form, --json prints it instead of the table.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabhom/report.hpp"

using namespace stabhom;

namespace {

// tier string: "z" or comma-separated field tokens like "f2,f3,f5"
void parse_tier(const std::string& s, int& single, std::vector<int>& primes) {
  single = 0;
  primes.clear();
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok == "z" || tok == "Z") continue;
    if (tok[0] == 'f' || tok[0] == 'F') {
      int p = std::atoi(tok.c_str() + 1);
      if (p < 2) throw CLI::ValidationError("tier", "bad field token " + tok);
      primes.push_back(p);
      single = p;
    } else {
      throw CLI::ValidationError("tier", "expected z or f<p>, got " + tok);
    }
  }
}

Submodule parse_howell(const Ring& R, int ambient, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Vec> rows;
  for (auto& r : j) rows.push_back(r.get<Vec>());
  return howell_form(R, ambient, rows);
}

int emit(const Report& rep, const std::string& out, bool json_stdout) {
  if (json_stdout)
    std::cout << rep.to_json();
  else
    std::cout << rep.to_table();
  if (!out.empty()) {
    std::ofstream f(out);
    f << rep.to_json();
  }
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabhom: exact homology of stability-category modules"};
  app.require_subcommand(1);

  std::string cat_spec = "fi", tier = "z", out, kind = "k", builtin, target,
              in_json, u_text, w_text, suite_name;
  int n = 0, max_rank = 0, genus = 0, max_dim = -1, floor_d = -1;
  bool homology = false, zero_conn = false, polydeg = false, csd = false,
       json_stdout = false;

  CLI::App* suite = app.add_subcommand("suite", "run a named verification suite");
  suite->add_option("name", suite_name,
                    "h3 | h4 | connectivity | csd | polydeg | wcm | join")
      ->required();
  suite->add_option("--cat", cat_spec, "category spec, e.g. fi or vic:zmod:2");
  suite->add_option("--max-rank", max_rank, "largest rank (or genus) examined");
  suite->add_option("--tier", tier, "z or field list like z,f2,f3,f5");
  suite->add_option("--builtin", builtin, "builtin module (csd suite)");
  suite->add_option("--target", target, "free-fi or a builtin (polydeg suite)");
  suite->add_option("--n", n, "ambient rank (wcm and join suites)");
  suite->add_option("--out", out, "write the JSON report here");
  suite->add_flag("--json", json_stdout, "print JSON instead of the table");

  CLI::App* cplx = app.add_subcommand("complex", "build a complex and measure it");
  cplx->add_option("--cat", cat_spec, "category spec")->required();
  cplx->add_option("--n", n, "rank of the target object");
  cplx->add_option("--genus", genus, "genus (symplectic complexes)");
  cplx->add_option("--kind", kind, "k | pb | pbc | spb");
  cplx->add_option("--u", u_text, "submodule U as a JSON row list");
  cplx->add_option("--w", w_text, "submodule W as a JSON row list");
  cplx->add_option("--max-dim", max_dim, "truncate the complex");
  cplx->add_option("--tier", tier, "z or a single field like f2");
  cplx->add_flag("--homology", homology, "compute reduced homology");
  cplx->add_flag("--zero-conn", zero_conn, "union-find connectivity");
  cplx->add_option("--out", out, "write the JSON report here");
  cplx->add_flag("--json", json_stdout, "print JSON instead of the table");

  CLI::App* mod = app.add_subcommand("module", "inspect a stability module");
  mod->add_option("--builtin", builtin, "builtin module name");
  mod->add_option("--in", in_json, "load a module from its JSON form");
  mod->add_option("--max-rank", max_rank, "largest rank constructed");
  mod->add_flag("--polydeg", polydeg, "polynomial degree report");
  mod->add_option("--floor", floor_d, "polynomial degree floor");
  mod->add_flag("--csd", csd, "coequalizer stability report");
  mod->add_flag("--homology", homology, "central stability homology per rank");
  mod->add_option("--tier", tier, "z or a single field like f2");
  mod->add_option("--out", out, "write the JSON report here");
  mod->add_flag("--json", json_stdout, "print JSON instead of the table");

  CLI11_PARSE(app, argc, argv);

  try {
    int tier_p = 0;
    std::vector<int> primes;
    parse_tier(tier, tier_p, primes);

    if (suite->parsed()) {
      Report rep;
      CategoryId cat = parse_category(cat_spec);
      if (suite_name == "h3") {
        if (!max_rank) max_rank = cat.kind == CatKind::FI ? 6 : 5;
        if (primes.empty() && cat.kind != CatKind::FI && max_rank >= 5)
          primes = {2, 3, 5};
        rep = run_h3_suite(cat, max_rank, primes);
      } else if (suite_name == "h4") {
        if (!max_rank) max_rank = cat.kind == CatKind::FI ? 6 : 4;
        rep = run_h4_suite(cat, max_rank);
      } else if (suite_name == "connectivity") {
        if (cat.kind == CatKind::FI) cat = parse_category("vic:zmod:2");
        if (!max_rank) max_rank = 4;
        rep = run_connectivity_suite(cat, max_rank);
      } else if (suite_name == "csd") {
        if (builtin.empty()) throw CLI::ValidationError("csd", "--builtin required");
        if (!max_rank) max_rank = 4;
        rep = run_csd_suite(builtin, max_rank);
      } else if (suite_name == "polydeg") {
        if (target.empty()) target = "free-fi";
        if (!max_rank)
          max_rank = target == "free-fi" || target == "h1ia-fi" ? 6 : 4;
        rep = run_polydeg_suite(target, max_rank);
      } else if (suite_name == "wcm") {
        rep = run_wcm_suite(n ? n : 3);
      } else if (suite_name == "join") {
        rep = run_join_suite(n ? n : 3);
      } else {
        throw CLI::ValidationError("suite", "unknown suite " + suite_name);
      }
      return emit(rep, out, json_stdout);
    }

    if (cplx->parsed()) {
      ComplexRequest req;
      req.cat = parse_category(cat_spec);
      req.n = genus ? genus : n;
      req.kind = kind;
      req.max_dim = max_dim;
      req.homology = homology;
      req.zero_conn = zero_conn;
      req.tier = tier_p;
      if (!u_text.empty()) req.U = parse_howell(req.cat.ring, req.n, u_text);
      if (!w_text.empty())
        req.W = parse_howell(req.cat.ring,
                             req.kind == "spb" ? 2 * req.n : req.n, w_text);
      return emit(run_complex_cmd(req), out, json_stdout);
    }

    // module subcommand
    if (!in_json.empty()) {
      std::ifstream f(in_json);
      std::stringstream buf;
      buf << f.rdbuf();
      StabilityModule A = module_from_json(buf.str());
      Report rep;
      rep.tool = "module";
      rep.input = {{"in", in_json}};
      ModuleRequest req;
      req.builtin = "";
      req.max_n = A.max_rank;
      // reuse the builtin path by serializing measurements directly
      std::ostringstream os;
      for (int k = 0; k <= A.max_rank; ++k)
        os << (k ? ", " : "") << "rank " << k << ": gens " << A.gens(k);
      rep.checks.push_back({"levels of the loaded module",
                            "deserialized presentation sizes", os.str(),
                            "measured", "Z", 0.0});
      if (polydeg) {
        PolyDegreeReport pd = polynomial_degree(A, floor_d);
        rep.checks.push_back({"polynomial degree via iterated shift cokernels",
                              "a module is polynomial of degree d when its "
                              "shift kernel vanishes and its shift cokernel "
                              "is polynomial of degree d - 1",
                              pd.summary, "measured", "Z", 0.0});
      }
      return emit(rep, out, json_stdout);
    }
    if (builtin.empty())
      throw CLI::ValidationError("module", "--builtin or --in required");
    ModuleRequest req;
    req.builtin = builtin;
    req.max_n = max_rank ? max_rank : 4;
    req.polydeg = polydeg;
    req.floor_d = floor_d;
    req.csd = csd;
    req.homology = homology;
    req.tier = tier_p;
    return emit(run_module_cmd(req), out, json_stdout);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
