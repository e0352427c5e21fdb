#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hvi/harness.hpp"

namespace hvi {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_study(const StudyReport& rep, const RunSettings& s, const std::string& stem) {
  const fs::path dir(s.output_dir);
  fs::create_directories(dir);
  if (s.output_format == "csv") {
    std::ofstream out(dir / (stem + ".csv"), std::ios::binary);
    write_csv(out, rep);
    if (!out) throw std::runtime_error("cannot write " + (dir / (stem + ".csv")).string());
    write_file(dir / (stem + ".meta.json"), metadata_json(rep, s));
  } else {
    write_file(dir / (stem + ".json"), study_json(rep, s));
  }
}

int cmd_solve(const RunSettings& s) {
  const CaseSpec c = configured_case(s);
  const int level = s.levels - 1;
  const Mesh2D mesh = case_mesh(c, s.h0, level);
  const DiscreteSystem sys = case_system(c, mesh, s.eps, s.solver.exec);
  const Solution sol = solve_newton(sys, s.solver);
  fs::create_directories(s.output_dir);
  write_file(fs::path(s.output_dir) / "solution.json", solution_json(sol, sys, s));
  std::cout << "solve: case=" << c.name << " level=" << level << " h=" << format_double(mesh.h)
            << " dofs=" << sys.size() << " iterations=" << sol.iterations
            << " residual=" << format_double(sol.residual_history.back()) << " energy=" << format_double(sol.energy)
            << " converged=" << (sol.converged ? "yes" : "no") << " unique=" << (sol.unique ? "yes" : "no") << "\n";
  if (!sol.converged) {
    std::cerr << "solver failure: " << sol.message << "\n";
    return 1;
  }
  return 0;
}

void print_rows(const StudyReport& rep) {
  for (const auto& r : rep.rows) {
    std::cout << "  level=" << r.level << " h=" << format_double(r.h) << " eps=" << format_double(r.eps)
              << " dofs=" << r.dofs << " iters=" << r.newton_iters << " converged=" << (r.converged ? "yes" : "no");
    if (r.error_h1_interior) std::cout << " err_h1=" << format_double(*r.error_h1_interior);
    if (r.diff_e_norm) std::cout << " diff=" << format_double(*r.diff_e_norm);
    std::cout << "\n";
  }
  for (const auto& [k, v] : rep.observed_orders) std::cout << "  order(" << k << ") = " << format_double(v) << "\n";
}

int cmd_study(const RunSettings& s, bool h_study) {
  const CaseSpec c = configured_case(s);
  const StudyReport rep = h_study ? run_h_study(c, s) : run_eps_study(c, s);
  write_study(rep, s, h_study ? "study_h" : "study_eps");
  std::cout << (h_study ? "study-h" : "study-eps") << ": case=" << c.name << "\n";
  print_rows(rep);
  return rep.flags.at("all_converged") ? 0 : 1;
}

int cmd_validate(const RunSettings& s) {
  const CaseSpec c = configured_case(s);
  const ValidationReport rep = validate_case(c, s);
  nlohmann::json j;
  j["case"] = c.name;
  nlohmann::json checks = nlohmann::json::array();
  std::cout << "validate: case=" << c.name << "\n";
  for (const auto& ch : rep.checks) {
    const char* tag = !ch.pass ? "FAIL" : ch.warning ? "WARN" : "PASS";
    std::cout << "  " << tag << "  " << ch.name << ": " << ch.detail << "\n";
    checks.push_back({{"name", ch.name}, {"status", tag}, {"detail", ch.detail}});
  }
  j["checks"] = checks;
  j["all_pass"] = rep.all_pass();
  fs::create_directories(s.output_dir);
  write_file(fs::path(s.output_dir) / "validation.json", j.dump(2) + "\n");
  return 0;
}

int cmd_dump_ops(const RunSettings& s) {
  const CaseSpec c = configured_case(s);
  const Mesh2D mesh = case_mesh(c, s.h0, s.levels - 1);
  const SteklovOperator st = build_steklov(mesh, {}, s.solver.exec);
  const fs::path dir(s.output_dir);
  fs::create_directories(dir);
  const std::pair<const char*, const Mat*> mats[] = {
      {"V", &st.ops.V}, {"K", &st.ops.K}, {"W", &st.ops.W}, {"S", &st.S}};
  for (const auto& [name, m] : mats) {
    std::ofstream out(dir / (std::string(name) + ".bemops"), std::ios::binary);
    write_bemops(out, *m);
  }
  std::cout << "dump-ops: case=" << c.name << " panels=" << st.ops.V.rows() << " nodes=" << st.S.rows()
            << " written to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Nonlinear FEM/BEM interface problems with nonmonotone friction"};
  app.require_subcommand(1);
  std::string config_path;
  std::string output_override;
  int threads = 0;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"solve", "solve once on the finest mesh level"},
                      {"study-h", "convergence study under mesh refinement"},
                      {"study-eps", "convergence study in the smoothing parameter"},
                      {"validate", "check the hypotheses of a case"},
                      {"dump-ops", "write the boundary operators as binary dumps"}};
  std::vector<CLI::App*> cmds;
  for (const auto& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->add_option("config", config_path, "config file")->required();
    cmd->add_option("--output", output_override, "override output.dir");
    cmd->add_option("--threads", threads, "OpenMP threads (default: runtime default)")->check(CLI::PositiveNumber);
    cmds.push_back(cmd);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (threads > 0) set_thread_count(threads);

  RunSettings settings;
  try {
    settings = settings_from_config(load_config(config_path));
    if (!output_override.empty()) settings.output_dir = output_override;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmds[0]->parsed()) return cmd_solve(settings);
    if (cmds[1]->parsed()) {
      if (settings.levels < 3) {
        std::cerr << "config error: " << settings.echo.source << ": mesh.levels = " << settings.levels
                  << ": levels >= 3 required\n";
        return 2;
      }
      return cmd_study(settings, true);
    }
    if (cmds[2]->parsed()) return cmd_study(settings, false);
    if (cmds[3]->parsed()) return cmd_validate(settings);
    return cmd_dump_ops(settings);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const MeshError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hvi
