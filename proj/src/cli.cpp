#include <duflo/cli.hpp>

#include <duflo/actions.hpp>
#include <duflo/diagrams.hpp>
#include <duflo/duflo_map.hpp>
#include <duflo/enveloping.hpp>
#include <duflo/liealg.hpp>
#include <duflo/sympoly.hpp>
#include <duflo/textio.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace duflo {
namespace {

using nlohmann::json;

constexpr unsigned kRelationSites = 50;

struct CliState {
  std::ostringstream out, err;
  int exit_code = 0;
};

struct AlgebraChoice {
  std::string preset_name, file;

  StructureConstants load() const {
    if (!preset_name.empty()) return preset(preset_name);
    return load_structure_constants_file(file);
  }
};

void add_algebra_options(CLI::App* cmd, AlgebraChoice& choice) {
  auto* group =
      cmd->add_option_group("algebra", "where the Lie algebra comes from");
  group->add_option("--preset", choice.preset_name,
                    "built-in algebra (see the `presets` command)");
  group->add_option("--file", choice.file, "structure-constant JSON file");
  group->require_option(1);
}

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ", ";
    s += names[i];
  }
  return s;
}

// --- presets ---------------------------------------------------------------

void run_presets(CliState& st, bool json_output) {
  json list = json::array();
  for (const std::string& name : preset_names()) {
    StructureConstants L = preset(name);
    if (json_output) {
      list.push_back(
          {{"name", L.name}, {"dim", L.dim}, {"basis", L.basis_names}});
    } else {
      st.out << L.name << "  dim " << L.dim
             << "  basis: " << join_names(L.basis_names) << "\n";
    }
  }
  if (json_output) st.out << list.dump(2) << "\n";
}

// --- jacobi ------------------------------------------------------------------

void run_jacobi(CliState& st, const AlgebraChoice& choice, bool json_output) {
  StructureConstants L = choice.load();
  JacobiReport rep = validate_jacobi(L);
  if (json_output) {
    json violations = json::array();
    for (const JacobiViolation& v : rep.violations) {
      violations.push_back({{"i", v.i + 1},
                            {"j", v.j + 1},
                            {"k", v.k + 1},
                            {"component", v.m + 1},
                            {"generators",
                             {L.basis_names[v.i], L.basis_names[v.j],
                              L.basis_names[v.k]}},
                            {"residual", to_string(v.residual)}});
    }
    json doc = {{"algebra", L.name},
                {"dim", L.dim},
                {"ok", rep.ok},
                {"violations", violations}};
    st.out << doc.dump(2) << "\n";
  } else {
    st.out << "algebra '" << L.name << "' (dim " << L.dim << "): Jacobi "
           << (rep.ok ? "holds" : "fails") << "\n";
    std::size_t shown = 0;
    for (const JacobiViolation& v : rep.violations) {
      if (shown == 10) {
        st.out << "  ... and " << rep.violations.size() - shown << " more\n";
        break;
      }
      st.out << "  (" << L.basis_names[v.i] << ", " << L.basis_names[v.j]
             << ", " << L.basis_names[v.k] << "): residual "
             << to_string(v.residual) << " on " << L.basis_names[v.m] << "\n";
      ++shown;
    }
  }
  if (!rep.ok) st.exit_code = 1;
}

// --- invariants --------------------------------------------------------------

void run_invariants(CliState& st, const AlgebraChoice& choice, unsigned degree,
                    const std::string& variance_name, bool json_output) {
  StructureConstants L = choice.load();
  Variance v =
      variance_name == "dual" ? Variance::Dual : Variance::Primal;
  std::vector<SymPoly> basis = invariants_basis(L, v, degree);
  if (json_output) {
    json vecs = json::array();
    for (const SymPoly& p : basis) vecs.push_back(print_poly_cleared(L, p));
    json doc = {{"algebra", L.name},
                {"variance", variance_name},
                {"degree", degree},
                {"dimension", basis.size()},
                {"basis", vecs}};
    st.out << doc.dump(2) << "\n";
  } else {
    st.out << "invariants of '" << L.name << "' in "
           << (v == Variance::Primal ? "S(g)" : "S(g*)") << " at degree "
           << degree << ": dimension " << basis.size() << "\n";
    for (const SymPoly& p : basis)
      st.out << "  " << print_poly_cleared(L, p) << "\n";
  }
}

// --- wheels ------------------------------------------------------------------

void run_wheels(CliState& st, unsigned order, bool json_output) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("--order must be an even number >= 2");
  WheelSeries w = wheel_coefficients(order);
  if (json_output) {
    json coeffs = json::array();
    for (unsigned n = 2; n <= order; n += 2)
      coeffs.push_back({{"n", n}, {"value", to_string(w.c.at(n))}});
    json doc = {{"order", order}, {"coefficients", coeffs}};
    st.out << doc.dump(2) << "\n";
  } else {
    for (unsigned n = 2; n <= order; n += 2)
      st.out << "c_" << n << " = " << to_string(w.c.at(n)) << "\n";
  }
}

// --- duflo -------------------------------------------------------------------

void run_duflo(CliState& st, const AlgebraChoice& choice,
               const std::string& poly_text, unsigned order, bool no_wheels,
               bool json_output) {
  StructureConstants L = choice.load();
  SymPoly P = parse_poly(L, Variance::Primal, poly_text);
  if (P.degree() > order)
    throw std::invalid_argument(
        "input degree " + std::to_string(P.degree()) +
        " exceeds --order " + std::to_string(order));
  const bool wheels = !no_wheels;
  bool invariant = is_invariant(L, P);

  UpsilonTruncation up = build_upsilon(L, order, wheels);
  UElement image = duflo_pairing(L, up, P);
  DufloOperator delta = wheels ? j_half_operator(L, order - order % 2)
                               : j_half_disabled(L, order);
  UElement image_op = duflo_operator_form(L, delta, P);
  if (!(image == image_op)) {
    st.err << "error: pairing and operator forms disagree\n";
    st.exit_code = 1;
    return;
  }
  if (!invariant)
    st.err << "warning: input is not ad-invariant; "
              "multiplicativity is not guaranteed\n";

  if (json_output) {
    json doc = {{"algebra", L.name},          {"order", order},
                {"wheels", wheels},           {"invariant", invariant},
                {"input", print_poly(L, P)},  {"image", print_uelement(L, image)}};
    st.out << doc.dump(2) << "\n";
  } else {
    st.out << "input: " << print_poly(L, P) << "\n";
    st.out << "image: " << print_uelement(L, image) << "\n";
  }
}

// --- verify ------------------------------------------------------------------

struct CheckRow {
  std::string name;
  bool ok = true;
  std::string detail;
};

std::vector<CheckRow> verify_relations(const StructureConstants& L,
                                       unsigned nsites, unsigned nthreads) {
  std::vector<CheckRow> rows;
  for (Relation r : {Relation::STU1, Relation::STU2, Relation::STU3,
                     Relation::AS, Relation::IHX, Relation::FourT}) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^
                        static_cast<unsigned long long>(r));
    std::vector<RelationSite> sites;
    sites.push_back(minimal_relation_site(r));
    while (sites.size() < nsites)
      sites.push_back(random_relation_site(r, rng));

    std::atomic<std::size_t> next{0};
    std::vector<char> failed(sites.size(), 0);
    auto worker = [&] {
      DiagramInterpreter interp(L);
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= sites.size()) break;
        if (!relation_residual(interp, sites[i]).is_zero()) failed[i] = 1;
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, nthreads); ++t)
      pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();

    std::size_t nfail = std::count(failed.begin(), failed.end(), char(1));
    rows.push_back(
        {"relations/" + relation_name(r), nfail == 0,
         nfail == 0
             ? std::to_string(sites.size()) + " sites, all residuals zero"
             : std::to_string(nfail) + " of " + std::to_string(sites.size()) +
                   " sites have nonzero residual"});
  }
  return rows;
}

void run_verify(CliState& st, const AlgebraChoice& choice,
                const std::string& suite, unsigned order, unsigned degree,
                unsigned threads, bool json_output) {
  StructureConstants L = choice.load();
  const unsigned even_order = order - order % 2;
  unsigned budget = degree != 0 ? degree
                                : std::min<unsigned>(order, L.dim <= 3 ? 6 : 4);
  budget = std::min(budget, order);
  auto want = [&](const char* name) { return suite == "all" || suite == name; };

  std::vector<CheckRow> rows;

  if (want("jacobi")) {
    JacobiReport rep = validate_jacobi(L);
    rows.push_back({"jacobi", rep.ok,
                    rep.ok ? "no violations"
                           : std::to_string(rep.violations.size()) +
                                 " violating triples"});
  }

  if (want("wheels")) {
    DiagramInterpreter interp(L);
    for (unsigned two_n = 2; two_n <= std::min(6u, even_order); two_n += 2) {
      SymPoly lhs = project_to_dual(L, interp.interpret(wheel(two_n)));
      SymPoly rhs = trace_ad_power(L, two_n);
      rows.push_back({"wheel-trace 2n=" + std::to_string(two_n), lhs == rhs,
                      lhs == rhs ? "wheel value equals Tr(ad_x^" +
                                       std::to_string(two_n) + ")"
                                 : "wheel value differs from the trace"});
    }
  }

  if (want("relations")) {
    for (CheckRow& row : verify_relations(L, kRelationSites, threads))
      rows.push_back(std::move(row));
  }

  if (want("jhalf")) {
    if (even_order >= 2) {
      bool ok = j_half_operator(L, even_order).total ==
                j_half_via_det(L, even_order);
      rows.push_back({"jhalf-det", ok,
                      ok ? "wheel series agrees with the determinant route"
                         : "wheel series disagrees with the determinant route"});
    } else {
      rows.push_back({"jhalf-det", true, "skipped (order < 2)"});
    }
  }

  if (want("duflo")) {
    UpsilonTruncation up = build_upsilon(L, order, true);
    DufloOperator delta = j_half_operator(L, even_order);

    std::vector<std::vector<SymPoly>> bases(budget + 1);
    for (unsigned d = 1; d <= budget; ++d)
      bases[d] = invariants_basis(L, Variance::Primal, d);

    for (unsigned d = 1; d <= budget; ++d) {
      if (bases[d].empty()) {
        rows.push_back({"duflo d=" + std::to_string(d), true,
                        "no invariants at this degree"});
        continue;
      }
      for (std::size_t i = 0; i < bases[d].size(); ++i) {
        const SymPoly& P = bases[d][i];
        std::string tag =
            " d=" + std::to_string(d) + " #" + std::to_string(i + 1);
        bool forms_ok =
            duflo_pairing(L, up, P) == duflo_operator_form(L, delta, P);
        rows.push_back({"duflo/forms" + tag, forms_ok,
                        forms_ok ? "pairing and operator forms agree"
                                 : "forms disagree"});
        CheckReport inv = check_invariance(L, up, P);
        rows.push_back({"duflo/invariance" + tag, inv.ok, inv.detail});
        CheckReport grad = check_graded_identity(L, up, P);
        rows.push_back({"duflo/graded" + tag, grad.ok, grad.detail});
      }
    }

    unsigned pairs = 0;
    for (unsigned d1 = 1; d1 <= budget && pairs < 12; ++d1)
      for (unsigned d2 = d1; d2 <= budget && pairs < 12; ++d2) {
        if (d1 + d2 > order) continue;
        for (std::size_t i = 0; i < bases[d1].size() && pairs < 12; ++i)
          for (std::size_t j = (d1 == d2 ? i : 0);
               j < bases[d2].size() && pairs < 12; ++j) {
            CheckReport rep =
                check_multiplicative(L, up, bases[d1][i], bases[d2][j]);
            ++pairs;
            rows.push_back({"duflo/multiplicative d=" + std::to_string(d1) +
                                "+" + std::to_string(d2) + " #" +
                                std::to_string(pairs),
                            rep.ok, rep.detail});
          }
      }
    if (pairs == 0)
      rows.push_back({"duflo/multiplicative", true,
                      "no invariant pairs within the degree budget"});
  }

  std::size_t passed = 0;
  for (const CheckRow& row : rows)
    if (row.ok) ++passed;
  bool all_ok = passed == rows.size();

  if (json_output) {
    json checks = json::array();
    for (const CheckRow& row : rows)
      checks.push_back(
          {{"name", row.name}, {"ok", row.ok}, {"detail", row.detail}});
    json doc = {{"algebra", L.name}, {"order", order},
                {"degree", budget},  {"suite", suite},
                {"checks", checks},  {"passed", passed},
                {"total", rows.size()}, {"ok", all_ok}};
    st.out << doc.dump(2) << "\n";
  } else {
    for (const CheckRow& row : rows)
      st.out << (row.ok ? "ok   " : "FAIL ") << row.name << ": " << row.detail
             << "\n";
    st.out << "verify '" << L.name << "': " << passed << "/" << rows.size()
           << " checks passed\n";
  }
  if (!all_ok) st.exit_code = 1;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliState st;

  CLI::App app{
      "exact structure constants, arrow-diagram tensors, and the Duflo map"};
  app.name("duflo");
  app.require_subcommand(1);

  // presets
  bool presets_json = false;
  CLI::App* presets_cmd =
      app.add_subcommand("presets", "list the built-in Lie algebras");
  presets_cmd->add_flag("--json", presets_json, "machine-readable output");
  presets_cmd->callback([&] { run_presets(st, presets_json); });

  // jacobi
  AlgebraChoice jacobi_choice;
  bool jacobi_json = false;
  CLI::App* jacobi_cmd = app.add_subcommand(
      "jacobi", "brute-force check of the Jacobi identity");
  add_algebra_options(jacobi_cmd, jacobi_choice);
  jacobi_cmd->add_flag("--json", jacobi_json, "machine-readable output");
  jacobi_cmd->callback([&] { run_jacobi(st, jacobi_choice, jacobi_json); });

  // invariants
  AlgebraChoice inv_choice;
  unsigned inv_degree = 0;
  std::string inv_variance = "primal";
  bool inv_json = false;
  CLI::App* inv_cmd = app.add_subcommand(
      "invariants", "basis of the ad-invariants in a fixed degree");
  add_algebra_options(inv_cmd, inv_choice);
  inv_cmd->add_option("--degree", inv_degree, "homogeneous degree")
      ->required()
      ->check(CLI::Range(1, 16));
  inv_cmd->add_option("--variance", inv_variance, "primal: S(g); dual: S(g*)")
      ->check(CLI::IsMember({"primal", "dual"}));
  inv_cmd->add_flag("--json", inv_json, "machine-readable output");
  inv_cmd->callback(
      [&] { run_invariants(st, inv_choice, inv_degree, inv_variance, inv_json); });

  // wheels
  unsigned wheels_order = 6;
  bool wheels_json = false;
  CLI::App* wheels_cmd = app.add_subcommand(
      "wheels", "wheel coefficients of (1/4)log(sinh(x/2)/(x/2))");
  wheels_cmd->add_option("--order", wheels_order,
                         "top degree (even, default 6)");
  wheels_cmd->add_flag("--json", wheels_json, "machine-readable output");
  wheels_cmd->callback([&] { run_wheels(st, wheels_order, wheels_json); });

  // duflo
  AlgebraChoice duflo_choice;
  std::string duflo_poly;
  unsigned duflo_order = 6;
  bool duflo_no_wheels = false, duflo_json = false;
  CLI::App* duflo_cmd = app.add_subcommand(
      "duflo", "apply the Duflo map to a polynomial in S(g)");
  add_algebra_options(duflo_cmd, duflo_choice);
  duflo_cmd->add_option("--poly", duflo_poly, "input polynomial, e.g. 'h^2 + 4*e*f'")
      ->required();
  duflo_cmd->add_option("--order", duflo_order,
                        "truncation order (default 6)")
      ->check(CLI::Range(1, 12));
  duflo_cmd->add_flag("--no-wheels", duflo_no_wheels,
                      "control: drop the wheel correction (plain "
                      "symmetrization)");
  duflo_cmd->add_flag("--json", duflo_json, "machine-readable output");
  duflo_cmd->callback([&] {
    run_duflo(st, duflo_choice, duflo_poly, duflo_order, duflo_no_wheels,
              duflo_json);
  });

  // verify
  AlgebraChoice verify_choice;
  std::string verify_suite = "all";
  unsigned verify_order = 6, verify_degree = 0, verify_threads = 1;
  bool verify_json = false;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the identity checks against one algebra");
  add_algebra_options(verify_cmd, verify_choice);
  verify_cmd
      ->add_option("suite", verify_suite,
                   "all|jacobi|wheels|relations|jhalf|duflo")
      ->check(CLI::IsMember(
          {"all", "jacobi", "wheels", "relations", "jhalf", "duflo"}));
  verify_cmd->add_option("--order", verify_order,
                         "truncation order (default 6)")
      ->check(CLI::Range(1, 12));
  verify_cmd->add_option("--degree", verify_degree,
                         "invariant degree budget (default: auto)")
      ->check(CLI::Range(1, 12));
  verify_cmd->add_option("--threads", verify_threads,
                         "worker threads for the relation sites")
      ->check(CLI::Range(1, 64));
  verify_cmd->add_flag("--json", verify_json, "machine-readable output");
  verify_cmd->callback([&] {
    run_verify(st, verify_choice, verify_suite, verify_order, verify_degree,
               verify_threads, verify_json);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, st.out, st.err);
    st.exit_code = rc == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    st.err << "error: " << e.what() << "\n";
    st.exit_code = 2;
  }

  return {st.exit_code, st.out.str(), st.err.str()};
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CliResult result = run_cli(args);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

}  // namespace duflo
