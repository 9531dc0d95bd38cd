#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ogk/convalg.hpp"
#include "ogk/errors.hpp"
#include "ogk/fieldlab.hpp"
#include "ogk/io.hpp"
#include "ogk/orlicz.hpp"
#include "ogk/suites.hpp"
#include "ogk/young.hpp"

namespace {

int cmd_zoo(bool list) {
  if (!list) {
    std::cout << "use --list\n";
    return 0;
  }
  std::cout << "young pairs:\n";
  for (const auto& id : ogk::zoo::young_ids()) std::cout << "  " << id << "\n";
  std::cout << "groupoids (prefix with zoo: on the command line):\n";
  for (const auto& id : ogk::zoo::groupoid_ids()) std::cout << "  " << id << "\n";
  std::cout << "haar systems: counting, weighted:<m0>,<m1>,...\n";
  std::cout << "field presets:\n";
  for (const auto& id : ogk::family_presets()) std::cout << "  " << id << "\n";
  std::cout << "suites:\n";
  for (const auto& id : ogk::suite_names()) std::cout << "  " << id << "\n";
  return 0;
}

int cmd_validate(const std::string& groupoid_path, const std::string& haar_arg) {
  const ogk::FiniteGroupoid g = ogk::io::groupoid_from_arg(groupoid_path);
  const auto grep = ogk::validate_groupoid(g);
  std::cout << "groupoid: " << grep.summary() << "\n";
  bool ok = grep.ok();
  if (!haar_arg.empty() && ok) {
    const ogk::HaarSystem h = ogk::io::haar_from_arg(haar_arg, g);
    const auto hrep = ogk::validate_haar(g, h);
    std::cout << "haar: " << hrep.summary() << "\n";
    ok = ok && hrep.ok();
  }
  return ok ? 0 : 1;
}

int cmd_norm(const std::string& section_path, const std::string& groupoid_arg,
             const std::string& haar_arg, const std::string& phi_id,
             const std::string& which) {
  const ogk::FiniteGroupoid g = ogk::io::groupoid_from_arg(groupoid_arg);
  const ogk::HaarSystem h = ogk::io::haar_from_arg(haar_arg, g);
  const auto pair = ogk::zoo::young_pair(phi_id);
  const ogk::Section s = ogk::io::load_section(section_path, g);

  std::printf("%-8s %-22s\n", "unit", which.c_str());
  double sup = 0.0;
  for (const int u : g.units()) {
    const ogk::FiberFunction f = s.fiber(g, u);
    double v = 0.0;
    if (which == "gauge")
      v = ogk::gauge_norm(pair.phi, g, h, f);
    else if (which == "orlicz")
      v = ogk::orlicz_norm(pair.phi, g, h, f).value;
    else if (which == "l1")
      v = ogk::fiber_l1(g, h, f);
    else
      throw ogk::ConfigError("--which must be gauge, orlicz or l1");
    sup = std::max(sup, v);
    std::printf("%-8d %.17g\n", u, v);
  }
  std::printf("%-8s %.17g\n", "sup", sup);
  return 0;
}

int cmd_convolve(const std::string& f_path, const std::string& g_path,
                 const std::string& groupoid_arg, const std::string& haar_arg,
                 const std::string& out_path) {
  const ogk::FiniteGroupoid g = ogk::io::groupoid_from_arg(groupoid_arg);
  const auto grep = ogk::validate_groupoid(g);
  if (!grep.ok()) throw ogk::ConfigError("groupoid invalid: " + grep.summary());
  const ogk::HaarSystem h = ogk::io::haar_from_arg(haar_arg, g);
  const ogk::Section f = ogk::io::load_section(f_path, g);
  const ogk::Section gg = ogk::io::load_section(g_path, g);
  const ogk::Section out = ogk::convolve(g, h, f, gg);
  if (out_path.empty()) {
    for (int x = 0; x < g.size(); ++x) {
      const ogk::cplx v = out.at(g, x);
      std::printf("%-6d %.17g %+.17gi\n", x, v.real(), v.imag());
    }
  } else {
    ogk::io::save_section(out, g, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_check(const std::string& selector, const ogk::SuiteConfig& cfg,
              const std::string& out_path, const std::string& csv_path) {
  const auto reports = ogk::run_suites(selector, cfg);
  bool all_pass = true;
  for (const auto& rep : reports) {
    const bool ok = rep.pass();
    all_pass = all_pass && ok;
    std::printf("[%s] %-28s %3zu checks, %8.1f ms\n", ok ? "PASS" : "FAIL",
                rep.suite.c_str(), rep.checks.size(), rep.wall_ms);
    if (!ok)
      for (const auto& c : rep.checks)
        if (!c.pass)
          std::printf("       failed: %s (slack %.3g)%s%s\n", c.name.c_str(), c.slack,
                      c.witness.empty() ? "" : " witness: ", c.witness.c_str());
  }
  if (!out_path.empty()) ogk::io::write_report_json(reports, all_pass, out_path);
  if (!csv_path.empty()) ogk::io::write_report_csv(reports, csv_path);
  return all_pass ? 0 : 1;
}

int cmd_field(const std::string& family_arg, const std::string& phi_id, int grid_n,
              bool refine, const std::string& which, const std::string& out_path) {
  ogk::ParametrizedFamily fam;
  try {
    fam = ogk::family_preset(family_arg);
  } catch (const ogk::ConfigError&) {
    fam = ogk::io::load_family(family_arg);
  }
  const auto pair = ogk::zoo::young_pair(phi_id);
  const ogk::NormKind kind =
      which == "orlicz" ? ogk::NormKind::orlicz : ogk::NormKind::gauge;

  if (refine) {
    const auto rep = ogk::refine_profile(fam, pair.phi, kind, grid_n);
    std::printf("modulus N=%d:  %.17g\n", grid_n, rep.coarse.modulus);
    std::printf("modulus N=%d:  %.17g\n", 2 * grid_n, rep.fine.modulus);
    std::printf("ratio:        %.17g\n", rep.ratio);
    if (!out_path.empty()) ogk::io::write_profile_csv(rep.fine, out_path);
  } else {
    const auto prof = ogk::norm_continuity_profile(fam, pair.phi, kind, grid_n);
    if (out_path.empty()) {
      std::printf("%-22s %-22s %-22s\n", "u", "norm", "adjacent_diff");
      for (std::size_t i = 0; i < prof.u.size(); ++i)
        std::printf("%-22.15g %-22.15g %-22.15g\n", prof.u[i], prof.norm[i],
                    i + 1 < prof.u.size() ? prof.adjacent_diff[i] : 0.0);
    } else {
      ogk::io::write_profile_csv(prof, out_path);
      std::cout << "wrote " << out_path << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ogk — Orlicz groupoid kit: finite groupoids, Haar systems, "
               "fiberwise Orlicz norms, convolution algebra checks"};
  app.require_subcommand(1);

  auto* zoo_cmd = app.add_subcommand("zoo", "list built-in objects");
  bool zoo_list = false;
  zoo_cmd->add_flag("--list", zoo_list, "list everything");

  auto* validate_cmd = app.add_subcommand("validate", "validate a groupoid (and Haar) file");
  std::string v_groupoid, v_haar;
  validate_cmd->add_option("groupoid", v_groupoid, "groupoid JSON or zoo:<id>")->required();
  validate_cmd->add_option("--haar", v_haar, "haar JSON, counting, or weighted:<...>");

  auto* norm_cmd = app.add_subcommand("norm", "per-unit norms of a section");
  std::string n_section, n_groupoid, n_haar = "counting", n_phi = "power:2",
              n_which = "gauge";
  norm_cmd->add_option("section", n_section, "section JSON")->required();
  norm_cmd->add_option("--groupoid", n_groupoid, "groupoid JSON or zoo:<id>")->required();
  norm_cmd->add_option("--haar", n_haar, "haar spec (default counting)");
  norm_cmd->add_option("--phi", n_phi, "young function id (default power:2)");
  norm_cmd->add_option("--which", n_which, "gauge|orlicz|l1");

  auto* conv_cmd = app.add_subcommand("convolve", "convolve two sections");
  std::string c_f, c_g, c_groupoid, c_haar = "counting", c_out;
  conv_cmd->add_option("f", c_f, "left section JSON")->required();
  conv_cmd->add_option("g", c_g, "right section JSON")->required();
  conv_cmd->add_option("--groupoid", c_groupoid, "groupoid JSON or zoo:<id>")->required();
  conv_cmd->add_option("--haar", c_haar, "haar spec (default counting)");
  conv_cmd->add_option("--out", c_out, "write result JSON here");

  auto* check_cmd = app.add_subcommand("check", "run verification suites");
  std::string k_selector = "all", k_out, k_csv, k_fault, k_groupoid, k_young;
  std::uint64_t k_seed = 7;
  int k_trials = 0;
  check_cmd->add_option("suite", k_selector, "suite name or 'all'");
  check_cmd->add_option("--seed", k_seed, "deterministic seed (default 7)");
  check_cmd->add_option("--trials", k_trials, "override random-trial counts");
  check_cmd->add_option("--out", k_out, "write JSON report here");
  check_cmd->add_option("--csv", k_csv, "write CSV summary here");
  check_cmd->add_option("--inject-fault", k_fault, "inject a fault (assoc)");
  check_cmd->add_option("--groupoid", k_groupoid, "restrict to one zoo groupoid id");
  check_cmd->add_option("--phi", k_young, "restrict to one young pair id");

  auto* field_cmd = app.add_subcommand("field", "sampled continuity profiles");
  std::string f_family, f_phi = "power:2", f_which = "gauge", f_out;
  int f_grid = 32;
  bool f_refine = false;
  field_cmd->add_option("--family", f_family, "preset name or family JSON")->required();
  field_cmd->add_option("--phi", f_phi, "young function id");
  field_cmd->add_option("--grid", f_grid, "sample count (default 32)");
  field_cmd->add_flag("--refine", f_refine, "compare N against 2N");
  field_cmd->add_option("--which", f_which, "gauge|orlicz");
  field_cmd->add_option("--out", f_out, "write CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (zoo_cmd->parsed()) return cmd_zoo(zoo_list);
    if (validate_cmd->parsed()) return cmd_validate(v_groupoid, v_haar);
    if (norm_cmd->parsed()) return cmd_norm(n_section, n_groupoid, n_haar, n_phi, n_which);
    if (conv_cmd->parsed()) return cmd_convolve(c_f, c_g, c_groupoid, c_haar, c_out);
    if (check_cmd->parsed()) {
      ogk::SuiteConfig cfg;
      cfg.seed = k_seed;
      cfg.trials = k_trials;
      cfg.inject_fault = k_fault;
      cfg.groupoid_only = k_groupoid;
      cfg.young_only = k_young;
      if (!k_fault.empty() && k_fault != "assoc")
        throw ogk::ConfigError("unknown fault '" + k_fault + "'");
      return cmd_check(k_selector, cfg, k_out, k_csv);
    }
    if (field_cmd->parsed())
      return cmd_field(f_family, f_phi, f_grid, f_refine, f_which, f_out);
  } catch (const ogk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ogk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
