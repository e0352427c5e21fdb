#include <charconv>
#include <cmath>
#include <chrono>
#include <ctime>
#include <ostream>

#include <json.hpp>

#include "hvi/harness.hpp"

namespace hvi {

namespace {

constexpr const char* kCodeVersion = "hvi 1.0.0";
constexpr const char* kCsvSchema = "hvi-study-csv/1";
constexpr int kProbeColumns = 5;

std::string opt(const std::optional<double>& x) { return x ? format_double(*x) : ""; }

nlohmann::json opt_json(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json metadata(const StudyReport& r, const RunSettings& s) {
  nlohmann::json j;
  j["schema"] = kCsvSchema;
  j["code_version"] = kCodeVersion;
  j["generated_utc"] = utc_now();
  j["study"] = r.kind;
  j["case"] = r.case_name;
  j["columns"] = csv_columns();
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : s.echo.values) cfg[k] = v;
  j["config"] = cfg;
  j["smoothing"] = {{"density", "zang"}, {"kappa", r.kappa}, {"eps", s.eps}, {"eps_schedule", s.eps_schedule}};
  j["observed_orders"] = r.observed_orders;
  j["oracles"] = r.oracles;
  j["flags"] = r.flags;
  nlohmann::json probes = nlohmann::json::array();
  for (const auto& p : r.probes) probes.push_back({p.x(), p.y()});
  j["probes"] = probes;
  return j;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c = {"level",     "h",        "eps",    "dofs",   "newton_iters",
                                  "converged", "residual", "energy", "alpha_hat", "c_s_disc",
                                  "unique",    "error_h1_interior", "error_l2_interior", "error_l2_boundary",
                                  "ext_err_max"};
    for (int k = 1; k <= kProbeColumns; ++k) c.push_back("ext_err_" + std::to_string(k));
    c.push_back("diff_e_norm");
    return c;
  }();
  return cols;
}

void write_csv(std::ostream& out, const StudyReport& report) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : report.rows) {
    std::vector<std::string> f = {std::to_string(r.level), format_double(r.h), format_double(r.eps),
                                  std::to_string(r.dofs), std::to_string(r.newton_iters), r.converged ? "1" : "0",
                                  format_double(r.residual), format_double(r.energy), format_double(r.alpha_hat),
                                  format_double(r.c_s_disc), r.unique ? "1" : "0", opt(r.error_h1_interior),
                                  opt(r.error_l2_interior), opt(r.error_l2_boundary)};
    std::optional<double> ext_max;
    for (double e : r.exterior_errors) ext_max = std::max(ext_max.value_or(0.0), e);
    f.push_back(opt(ext_max));
    for (int k = 0; k < kProbeColumns; ++k)
      f.push_back(k < static_cast<int>(r.exterior_errors.size()) ? format_double(r.exterior_errors[k]) : "");
    f.push_back(opt(r.diff_e_norm));
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << '\n';
  }
}

std::string metadata_json(const StudyReport& report, const RunSettings& s) { return metadata(report, s).dump(2) + "\n"; }

std::string study_json(const StudyReport& report, const RunSettings& s) {
  nlohmann::json j = metadata(report, s);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"level", r.level},
                    {"h", r.h},
                    {"eps", r.eps},
                    {"dofs", r.dofs},
                    {"newton_iters", r.newton_iters},
                    {"converged", r.converged},
                    {"residual", r.residual},
                    {"energy", r.energy},
                    {"alpha_hat", r.alpha_hat},
                    {"c_s_disc", r.c_s_disc},
                    {"unique", r.unique},
                    {"error_h1_interior", opt_json(r.error_h1_interior)},
                    {"error_l2_interior", opt_json(r.error_l2_interior)},
                    {"error_l2_boundary", opt_json(r.error_l2_boundary)},
                    {"exterior_errors", r.exterior_errors},
                    {"diff_e_norm", opt_json(r.diff_e_norm)}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string solution_json(const Solution& sol, const DiscreteSystem& sys, const RunSettings& s) {
  nlohmann::json j;
  j["code_version"] = kCodeVersion;
  j["case"] = s.case_name;
  j["level"] = sys.mesh.level;
  j["h"] = sys.mesh.h;
  j["eps"] = sys.params.epsilon;
  j["dofs"] = sys.size();
  j["u"] = std::vector<double>(sol.u.data(), sol.u.data() + sol.u.size());
  j["v"] = std::vector<double>(sol.v.data(), sol.v.data() + sol.v.size());
  std::vector<int> s_vertices;
  for (int b : sys.s_nodes) s_vertices.push_back(sys.trace.boundary_to_vertex[b]);
  j["gamma_s_vertices"] = s_vertices;
  j["multiplier"] = sol.multiplier;
  j["iterations"] = sol.iterations;
  j["residual_history"] = sol.residual_history;
  j["energy"] = sol.energy;
  j["energy_history"] = sol.energy_history;
  j["converged"] = sol.converged;
  j["energy_decreasing"] = sol.energy_decreasing;
  j["alpha_hat"] = sol.alpha_hat;
  j["c_s_disc"] = sol.c_s_disc;
  j["unique"] = sol.unique;
  j["message"] = sol.message;
  return j.dump(2) + "\n";
}

}  // namespace hvi
