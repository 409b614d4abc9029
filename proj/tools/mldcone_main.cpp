#include <CLI11.hpp>

#include "mldcone/catalog.hpp"
#include "mldcone/chart.hpp"
#include "mldcone/curves.hpp"
#include "mldcone/io.hpp"
#include "mldcone/lattice.hpp"
#include "mldcone/mld.hpp"
#include "mldcone/scan.hpp"
#include "mldcone/sft.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace mldcone;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitIdentity = 4;
constexpr int kExitFixture = 5;

std::int64_t parse_int_flag(const std::string& text, const std::string& flag) {
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(flag + ": bad integer '" + text + "'");
  return value;
}

Rat parse_rat_flag(const std::string& text, const std::string& flag) {
  try {
    return Rat::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(flag + ": " + e.what());
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text,
                                         const std::string& flag) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::size_t end = comma == std::string::npos ? text.size() : comma;
    out.push_back(parse_int_flag(text.substr(pos, end - pos), flag));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<Rat> parse_rat_list(const std::string& text,
                                const std::string& flag) {
  std::vector<Rat> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::size_t end = comma == std::string::npos ? text.size() : comma;
    out.push_back(parse_rat_flag(text.substr(pos, end - pos), flag));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// The three ways to hand one cone to a verb; at most one may be used.
struct ConeInput {
  std::string quotient;
  std::string wps;
  std::string file;

  void add_flags(CLI::App* cmd) {
    auto* q = cmd->add_option("--quotient", quotient,
                              "inline cyclic quotient 'm:a1,a2,...'");
    auto* w = cmd->add_option("--wps", wps,
                              "weighted projective weights 'a0,a1,...'");
    auto* f = cmd->add_option("--file", file, "cone data file (JSON)");
    q->excludes(w)->excludes(f);
    w->excludes(f);
  }

  FanoConeData load(std::int64_t max_order) const {
    if (!quotient.empty()) return parse_quotient_shorthand(quotient, max_order);
    if (!wps.empty()) return wps_cone(make_wps(parse_int_list(wps, "--wps")));
    if (!file.empty()) return load_cone_file(file);
    throw ParseError("no cone input: pass --quotient, --wps, or --file");
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << text;
}

int cmd_mld(const ConeInput& input, const std::string& format,
            std::int64_t max_order) {
  FanoConeData data = input.load(max_order);
  ValidationReport report = validate_cone(data, max_order);
  if (!report.pass) {
    std::cerr << report.summary() << '\n';
    return kExitValidation;
  }

  MldResult one = mld_eq1(data, max_order);
  MldResult two = mld_eq2(data, max_order);
  if (one.value != two.value) {
    std::cerr << "identity failure: the two mld formulas disagree ("
              << one.value.str() << " vs " << two.value.str() << ")\n";
    return kExitIdentity;
  }

  if (format == "json") {
    std::cout << mld_result_to_json(data, two);
  } else if (format == "csv") {
    std::cout << mld_result_to_csv(data, two);
  } else {
    BoundCheck bound = theorem_bound_check(data, max_order);
    std::cout << "name: " << data.name << '\n'
              << "dim n: " << data.dim << '\n'
              << "r: " << data.r.str() << '\n'
              << "validation: ok\n"
              << "mld (orbifold formula): " << one.value.str() << '\n'
              << "mld (inverse-sector formula): " << two.value.str() << '\n'
              << "witness: " << two.witness.str() << '\n'
              << "bound mld <= n: " << (bound.ok ? "holds" : "VIOLATED")
              << '\n'
              << two.value.str() << '\n';
    if (!bound.ok) return kExitIdentity;
  }
  return kExitOk;
}

int cmd_scan(const ScanConfig& config, const std::string& format,
             const std::string& out_path) {
  ScanReport report = run_scan(config);
  if (format == "csv") {
    emit(scan_csv(report), out_path);
  } else {
    std::ostringstream os;
    os << "cones checked: " << report.checked << '\n'
       << "bound mld <= n: "
       << (report.failures == 0 ? "holds on every cone" : "VIOLATED") << '\n'
       << "equality mld = n: " << report.equalities << " cone(s)\n";
    for (const auto& row : report.rows) {
      if (row.equality && row.smooth.has_value() && !*row.smooth)
        os << "  singular cone attaining the bound: " << row.name << '\n';
    }
    for (const auto& name : report.failing)
      os << "  bound violated: " << name << '\n';
    emit(os.str(), out_path);
  }
  return report.failures == 0 ? kExitOk : kExitIdentity;
}

int cmd_crosscheck(const ConeInput& input, std::int64_t max_order) {
  FanoConeData data = input.load(max_order);
  ValidationReport vreport = validate_cone(data, max_order);
  if (!vreport.pass) {
    std::cerr << vreport.summary() << '\n';
    return kExitValidation;
  }

  int passed = 0;
  auto line = [&](const std::string& label, bool ok,
                  const std::string& detail) {
    std::cout << label << ": " << (ok ? "PASS" : "FAIL") << detail << '\n';
    if (ok) ++passed;
  };

  MldResult one = mld_eq1(data, max_order);
  MldResult two = mld_eq2(data, max_order);
  line("orbifold formula = inverse-sector formula", one.value == two.value,
       one.value == two.value
           ? ""
           : " (" + one.value.str() + " vs " + two.value.str() + ")");

  Rat oracle = mld_oracle_cone(data, max_order);
  line("inverse-sector formula = lattice box oracle", two.value == oracle,
       two.value == oracle ? ""
                           : " (" + two.value.str() + " vs " + oracle.str() +
                                 ")");

  Rat sft = mld_from_sft(data, max_order);
  line("orbit infimum = mld", sft == two.value,
       sft == two.value ? ""
                        : " (" + sft.str() + " vs " + two.value.str() + ")");

  // Term by term: candidate of each simple orbit against the minimand of the
  // sector, the principal orbit against r.
  bool terms_ok = true;
  std::string datum;
  {
    QuotientChart principal("principal", data.dim, {});
    Rat lhs = lsft_index(make_orbit(identity_element(principal)), data.r) /
                  Rat(2) +
              Rat(1);
    if (lhs != data.r) {
      terms_ok = false;
      datum = " (principal orbit: " + lhs.str() + " vs " + data.r.str() + ")";
    }
  }
  for (const auto& chart : data.charts) {
    if (!terms_ok) break;
    for_each_element(chart, max_order, [&](const GroupElement& g) {
      if (!terms_ok || g.is_identity()) return;
      Rat lhs = lsft_index(make_orbit(g), data.r) / Rat(2) + Rat(1);
      Rat rhs = data.r * (Rat(1) - theta_fiber(g)) + age_base(g.inverse());
      if (lhs != rhs) {
        terms_ok = false;
        datum = " (chart " + chart.label() + ", element " +
                exponents_str(g.exponents) + ": " + lhs.str() + " vs " +
                rhs.str() + ")";
      }
    });
  }
  line("orbit candidates = minimands", terms_ok, datum);

  std::cout << passed << "/4 PASS\n";
  return passed == 4 ? kExitOk : kExitIdentity;
}

int cmd_curves_d(const std::string& r_text, std::int64_t ell, std::int64_t k,
                 const std::string& age_text) {
  Rat r = parse_rat_flag(r_text, "--r");
  Rat age_inv = parse_rat_flag(age_text, "--age-inv");
  if (age_inv < Rat(0))
    throw std::invalid_argument("--age-inv: age must be >= 0");
  std::cout << (minusK_degree(r, k, ell) + age_inv).str() << '\n';
  return kExitOk;
}

int cmd_examples() {
  bool all_ok = true;
  for (const auto& fx : example_fixtures()) {
    DInvariant di = d_invariant(fx.datum());
    bool value_ok = di.value == fx.expected_d;
    bool tight_ok = (di.value == Rat(fx.cone.dim)) == fx.expected_tight;
    CurveMldCheck check = mld_upper_from_curve(fx.cone, fx.datum());
    bool ok = value_ok && tight_ok && check.ok;
    all_ok = all_ok && ok;
    std::cout << fx.name << ": d = " << di.value.str() << " (expected "
              << fx.expected_d.str() << "), mld = " << check.mld.str()
              << " <= d: " << (check.ok ? "yes" : "NO") << " -> "
              << (ok ? "PASS" : "FAIL") << '\n';
  }
  std::cout << (all_ok ? "4/4 PASS\n" : "fixture mismatch\n");
  return all_ok ? kExitOk : kExitFixture;
}

int cmd_sft(const ConeInput& input, const std::string& format,
            std::int64_t max_order) {
  FanoConeData data = input.load(max_order);
  ValidationReport vreport = validate_cone(data, max_order);
  if (!vreport.pass) {
    std::cerr << vreport.summary() << '\n';
    return kExitValidation;
  }
  auto table = sft_orbit_table(data, max_order);
  Rat value = mld_from_sft(data, max_order);
  if (format == "csv") {
    std::cout << "chart,element,period,lsft,candidate\n";
    for (const auto& row : table) {
      std::cout << csv_quote(row.chart) << ',' << csv_quote(row.element) << ','
                << row.period.str() << ',' << row.lsft.str() << ','
                << row.candidate.str() << '\n';
    }
  } else {
    std::cout << "cone: " << data.name << " (r = " << data.r.str() << ")\n";
    for (const auto& row : table) {
      std::cout << "  " << row.chart << ' ' << row.element
                << "  period " << row.period.str() << "  lsft "
                << row.lsft.str() << "  lsft/2+1 " << row.candidate.str()
                << '\n';
    }
    std::cout << "mld: " << value.str() << '\n';
  }
  if (!sft_consistency(data, max_order)) {
    std::cerr << "identity failure: orbit infimum disagrees with the mld\n";
    return kExitIdentity;
  }
  return kExitOk;
}

int cmd_catalog_examples(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  for (const auto& fx : example_fixtures()) {
    std::string path = (dir.empty() ? std::string(".") : dir) + "/" +
                       fx.cone.name + ".json";
    bool seen = false;
    for (const auto& w : written) seen = seen || w == path;
    if (seen) continue;
    emit(cone_to_json(fx.cone), path);
    written.push_back(path);
    std::cout << path << '\n';
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"exact mld of isolated Fano cone singularities"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string max_order_text;
  if (const char* env = std::getenv("MLD_MAX_ORDER")) max_order_text = env;
  app.add_option("--max-order", max_order_text,
                 "bound on enumerated group order (env MLD_MAX_ORDER)");

  auto* mld_cmd = app.add_subcommand("mld", "mld of one cone, both formulas");
  ConeInput mld_input;
  mld_input.add_flags(mld_cmd);
  std::string mld_format = "text";
  mld_cmd->add_option("--format", mld_format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  auto* scan_cmd =
      app.add_subcommand("scan", "sweep the catalog and check mld <= n");
  ScanConfig scan_config;
  std::string scan_format = "csv";
  std::string scan_out;
  scan_cmd->add_option("--n-min", scan_config.n_min, "smallest dimension");
  scan_cmd->add_option("--n-max", scan_config.n_max, "largest dimension");
  scan_cmd->add_option("--m-max", scan_config.m_max, "largest quotient order");
  scan_cmd->add_option("--wps-weights", scan_config.wps_max_weights,
                       "max number of weighted projective weights (0 = skip)");
  scan_cmd->add_option("--wps-bound", scan_config.wps_weight_bound,
                       "largest weighted projective weight");
  scan_cmd->add_option("--jobs", scan_config.jobs, "worker threads");
  scan_cmd->add_option("--format", scan_format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));
  scan_cmd->add_option("--out", scan_out, "write the report to a file");

  auto* cross_cmd = app.add_subcommand(
      "crosscheck", "verify the four mld identities on one cone");
  ConeInput cross_input;
  cross_input.add_flags(cross_cmd);

  auto* curves_cmd =
      app.add_subcommand("curves", "twisted rational curve calculators");
  curves_cmd->require_subcommand(1);
  auto* curves_d = curves_cmd->add_subcommand(
      "d", "d = r(-k)/ell + age of the inverse sector");
  std::string d_r, d_age;
  std::int64_t d_ell = 1, d_k = -1;
  curves_d->add_option("--r", d_r, "Fano index r (rational)")->required();
  curves_d->add_option("--ell", d_ell, "orbifold order at infinity")
      ->required();
  curves_d->add_option("--k", d_k, "twist degree (negative)")->required();
  curves_d->add_option("--age-inv", d_age, "age of the inverse sector")
      ->required();
  auto* curves_chi = curves_cmd->add_subcommand(
      "chi", "chi of O(b) on the orbifold line P(1,ell)");
  std::int64_t chi_b = 0, chi_ell = 1;
  curves_chi->add_option("--b", chi_b, "degree")->required();
  curves_chi->add_option("--ell", chi_ell, "orbifold order")->required();
  auto* curves_k = curves_cmd->add_subcommand(
      "k", "admissible twist degrees for a sector of order m, weight p");
  std::int64_t k_m = 1, k_p = 0, k_ell = 1;
  curves_k->add_option("--m", k_m, "sector order")->required();
  curves_k->add_option("--p", k_p, "fiber weight in [0,m)")->required();
  curves_k->add_option("--ell", k_ell, "orbifold order at infinity")
      ->required();
  auto* curves_vdim = curves_cmd->add_subcommand(
      "vdim", "virtual dimension with marked twisted points");
  std::string vdim_a, vdim_ages;
  int vdim_dim = 1;
  curves_vdim->add_option("--a", vdim_a, "degree of -K_Y on the curve")
      ->required();
  curves_vdim->add_option("--dim", vdim_dim, "dim Y")->required();
  curves_vdim->add_option("--ages", vdim_ages,
                          "comma list of ages, may be empty");

  auto* examples_cmd =
      app.add_subcommand("examples", "reproduce the worked curve fixtures");

  auto* catalog_cmd =
      app.add_subcommand("catalog", "emit cone data files");
  catalog_cmd->require_subcommand(1);
  auto* catalog_wps =
      catalog_cmd->add_subcommand("wps", "cone over a weighted projective space");
  std::string catalog_wps_weights, catalog_wps_out;
  catalog_wps->add_option("weights", catalog_wps_weights, "weights 'a0,a1,...'")
      ->required();
  catalog_wps->add_option("--out", catalog_wps_out, "output file");
  auto* catalog_quot =
      catalog_cmd->add_subcommand("quotient", "isolated cyclic quotient cone");
  std::string catalog_quot_text, catalog_quot_out;
  catalog_quot->add_option("data", catalog_quot_text, "quotient 'm:a1,a2,...'")
      ->required();
  catalog_quot->add_option("--out", catalog_quot_out, "output file");
  auto* catalog_examples =
      catalog_cmd->add_subcommand("examples", "the two worked example cones");
  std::string catalog_examples_dir = ".";
  catalog_examples->add_option("--dir", catalog_examples_dir,
                               "output directory");

  auto* sft_cmd =
      app.add_subcommand("sft", "orbit table and mld from the orbit infimum");
  ConeInput sft_input;
  std::string sft_file_pos;
  sft_cmd->add_option("conefile", sft_file_pos, "cone data file (JSON)");
  sft_input.add_flags(sft_cmd);
  std::string sft_format = "text";
  sft_cmd->add_option("--format", sft_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  std::int64_t max_order = kDefaultMaxOrder;
  if (!max_order_text.empty()) {
    max_order = parse_int_flag(max_order_text, "--max-order");
    if (max_order < 1)
      throw std::invalid_argument("--max-order: bound must be >= 1");
  }

  if (*mld_cmd) return cmd_mld(mld_input, mld_format, max_order);
  if (*scan_cmd) {
    scan_config.max_order = max_order;
    return cmd_scan(scan_config, scan_format, scan_out);
  }
  if (*cross_cmd) return cmd_crosscheck(cross_input, max_order);
  if (*curves_d) return cmd_curves_d(d_r, d_ell, d_k, d_age);
  if (*curves_chi) {
    std::cout << chi_orb_line(chi_b, chi_ell).str() << '\n';
    return kExitOk;
  }
  if (*curves_k) {
    AdmissibleK adm = admissible_k(k_m, k_p, k_ell);
    std::cout << "k_max: " << adm.k_max << '\n'
              << "residue: " << adm.residue << '\n';
    return kExitOk;
  }
  if (*curves_vdim) {
    Rat a = parse_rat_flag(vdim_a, "--a");
    std::vector<Rat> ages = parse_rat_list(vdim_ages, "--ages");
    std::cout << vdim_multi(a, vdim_dim, ages).str() << '\n';
    return kExitOk;
  }
  if (*examples_cmd) return cmd_examples();
  if (*catalog_wps) {
    FanoConeData data =
        wps_cone(make_wps(parse_int_list(catalog_wps_weights, "weights")));
    emit(cone_to_json(data), catalog_wps_out);
    return kExitOk;
  }
  if (*catalog_quot) {
    FanoConeData data = parse_quotient_shorthand(catalog_quot_text, max_order);
    emit(cone_to_json(data), catalog_quot_out);
    return kExitOk;
  }
  if (*catalog_examples) return cmd_catalog_examples(catalog_examples_dir);
  if (*sft_cmd) {
    if (!sft_file_pos.empty()) {
      if (!sft_input.quotient.empty() || !sft_input.wps.empty() ||
          !sft_input.file.empty())
        throw ParseError("sft: give either a cone file or one inline flag");
      sft_input.file = sft_file_pos;
    }
    return cmd_sft(sft_input, sft_format, max_order);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const FamilyTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::logic_error& e) {
    std::cerr << "internal identity failure: " << e.what() << '\n';
    return kExitIdentity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
}
