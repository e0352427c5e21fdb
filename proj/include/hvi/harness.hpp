#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hvi/solver.hpp"

namespace hvi {

// ---- configuration ----

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" file with dotted keys and '#' comments.
struct Config {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;  // key -> source line
  std::string source = "<config>";
};

Config parse_config(std::istream& in, const std::string& source);
Config load_config(const std::string& path);
const std::vector<std::string>& known_config_keys();

struct RunSettings {
  std::string case_name;
  double h0 = 0.15;
  int levels = 4;
  double scale = 0.4;
  SolverConfig solver;
  bool warm_start = true;
  double eps = 0.1;
  std::vector<double> eps_schedule{0.1, 0.05, 0.025, 0.0125};
  std::optional<std::string> friction_name;
  std::vector<double> friction_params;
  std::optional<std::string> material_name;
  std::string output_dir = "out";
  std::string output_format = "csv";
  Config echo;
};

/// Typed view of a config; throws ConfigError with the offending line.
RunSettings settings_from_config(const Config& cfg);

// ---- problem catalog ----

struct ExactSolution {
  std::function<double(const Point2&)> u1;
  std::function<Point2(const Point2&)> grad_u1;
  std::function<double(const Point2&)> u2;
  std::function<Point2(const Point2&)> grad_u2;
};

struct CaseSpec {
  std::string name;
  std::vector<Point2> polygon;
  std::vector<Label> labels;  // per polygon side
  std::string material;
  std::string friction;
  std::vector<double> friction_params;
  std::function<SuperpotentialSpec()> make_friction;  // catalog friction with its parameters
  ProblemData data;                                   // material filled from `material`
  std::optional<ExactSolution> exact;
  std::vector<Point2> probes;  // exterior probe points (cases with an exact solution)
};

const std::vector<std::string>& case_names();
/// Catalog case on the unit square [-1/2, 1/2]^2 scaled by `scale`.
CaseSpec manufactured_case(const std::string& name, double scale = 0.4);
/// Applies config overrides of material and friction.
CaseSpec configured_case(const RunSettings& settings);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  bool warning = false;  // reported, but does not fail the validation
};

/// Transmission conditions of the exact solution at n boundary samples.
CheckResult transmission_consistency(const CaseSpec& c, int samples = 100);

Mesh2D case_mesh(const CaseSpec& c, double h0, int level);
DiscreteSystem case_system(const CaseSpec& c, const Mesh2D& mesh, double eps, Execution exec = Execution::parallel);

// ---- studies ----

struct StudyRow {
  int level = 0;
  double h = 0.0;
  double eps = 0.0;
  int dofs = 0;
  int newton_iters = 0;
  bool converged = false;
  double residual = 0.0;
  double energy = 0.0;
  double alpha_hat = 0.0;
  double c_s_disc = 0.0;
  bool unique = false;
  std::optional<double> error_h1_interior;
  std::optional<double> error_l2_interior;
  std::optional<double> error_l2_boundary;
  std::vector<double> exterior_errors;
  std::optional<double> diff_e_norm;
  Solution solution;  // not serialized
};

struct StudyReport {
  std::string kind;  // "h" or "eps"
  std::string case_name;
  std::vector<StudyRow> rows;
  std::map<std::string, double> observed_orders;
  std::map<std::string, std::string> oracles;  // error column -> oracle
  std::map<std::string, bool> flags;
  std::vector<Point2> probes;
  double kappa = 0.25;
};

StudyReport run_h_study(const CaseSpec& c, const RunSettings& s);
StudyReport run_eps_study(const CaseSpec& c, const RunSettings& s);
/// Least-squares slope of log(y) against log(x); needs >= 3 positive pairs.
std::optional<double> observed_order(const std::vector<double>& x, const std::vector<double>& y);

struct ValidationReport {
  std::string case_name;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

ValidationReport validate_case(const CaseSpec& c, const RunSettings& s);

// ---- output ----

std::string format_double(double x);
const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& out, const StudyReport& report);
std::string metadata_json(const StudyReport& report, const RunSettings& s);
std::string study_json(const StudyReport& report, const RunSettings& s);
std::string solution_json(const Solution& sol, const DiscreteSystem& sys, const RunSettings& s);

/// Entry point of the command line tool; returns the process exit code.
int cli_main(int argc, char** argv);

}  // namespace hvi
