#include "volstudy/json_io.hpp"

#include "volstudy/csv.hpp"

namespace volstudy {

void to_json(nlohmann::json& j, const GarchParams& p) {
  j = nlohmann::json{{"alpha", p.alpha},
                     {"beta", p.beta},
                     {"psi0", p.psi0},
                     {"psi1", p.psi1},
                     {"psi2", p.psi2}};
}

void from_json(const nlohmann::json& j, GarchParams& p) {
  j.at("alpha").get_to(p.alpha);
  j.at("beta").get_to(p.beta);
  j.at("psi0").get_to(p.psi0);
  j.at("psi1").get_to(p.psi1);
  j.at("psi2").get_to(p.psi2);
}

void to_json(nlohmann::json& j, const GarchFit& f) {
  j = nlohmann::json{
      {"params", f.params},
      {"log_likelihood", f.log_likelihood},
      {"initial_log_likelihood", f.initial_log_likelihood},
      {"converged", f.converged},
      {"iterations", f.iterations},
      {"terminal_state",
       {{"sigma2", f.terminal.sigma2}, {"eps", f.terminal.eps}}},
      {"estimation", {{"first", f.estimation.first}, {"last", f.estimation.last}}},
  };
}

void from_json(const nlohmann::json& j, GarchFit& f) {
  j.at("params").get_to(f.params);
  j.at("log_likelihood").get_to(f.log_likelihood);
  j.at("initial_log_likelihood").get_to(f.initial_log_likelihood);
  j.at("converged").get_to(f.converged);
  j.at("iterations").get_to(f.iterations);
  f.terminal.sigma2 = j.at("terminal_state").at("sigma2").get<double>();
  f.terminal.eps = j.at("terminal_state").at("eps").get<double>();
  f.estimation.first = j.at("estimation").at("first").get<std::size_t>();
  f.estimation.last = j.at("estimation").at("last").get<std::size_t>();
}

void to_json(nlohmann::json& j, const Chi2Test& t) {
  j = nlohmann::json{
      {"statistic", t.statistic}, {"df", t.df}, {"p_value", t.p_value}};
}

void to_json(nlohmann::json& j, const BootstrapResult& b) {
  j = nlohmann::json{{"replications", b.replications},
                     {"p_upper", b.p_upper},
                     {"p_lower", b.p_lower},
                     {"seed", b.seed}};
}

void to_json(nlohmann::json& j, const CavResult& r) {
  j = nlohmann::json{{"group", r.group},
                     {"window", r.window_compact},
                     {"window_label", r.window_label},
                     {"num_cases", r.num_cases},
                     {"window_length", r.window_length},
                     {"cav", r.cav},
                     {"pct_vol", r.pct_vol},
                     {"chi2", r.chi2}};
  if (r.bootstrap) j["bootstrap"] = *r.bootstrap;
}

void to_json(nlohmann::json& j, const GroupStudyResult& g) {
  j = nlohmann::json{
      {"result", g.result},
      {"day_offsets", g.day_offsets},
      {"multipliers", g.multipliers},
      {"cumulative", g.cumulative},
      {"mean_residual", g.mean_residual},
      {"case_ids", g.case_ids},
      {"case_variance_ratio", g.case_variance_ratio},
      {"median_case_variance_ratio", g.median_case_variance_ratio},
  };
  nlohmann::json dropped = nlohmann::json::array();
  for (const auto& d : g.dropped) {
    dropped.push_back({{"case_id", d.case_id}, {"reason", d.reason}});
  }
  j["dropped"] = dropped;
}

void to_json(nlohmann::json& j, const RegressionResult& r) {
  j = nlohmann::json{{"names", r.names},
                     {"estimates", r.estimates},
                     {"std_errors", r.std_errors},
                     {"t_values", r.t_values},
                     {"p_values", r.p_values},
                     {"r2", r.r2},
                     {"adj_r2", r.adj_r2},
                     {"n", r.n},
                     {"k", r.k},
                     {"robust", r.robust}};
}

std::string cav_csv_header() {
  return "group,window,window_label,num_cases,window_length,cav,pct_vol,"
         "p_value,p_value_bootstrap\n";
}

std::string cav_csv_row(const CavResult& r) {
  // Both window columns contain commas, so they are quoted.
  std::string row = r.group + ",\"" + r.window_compact + "\",\"" +
                    r.window_label +
                    "\"," + std::to_string(r.num_cases) + "," +
                    std::to_string(r.window_length) + "," +
                    format_double(r.cav) + "," + format_double(r.pct_vol) +
                    "," + format_double(r.chi2.p_value) + ",";
  if (r.bootstrap) row += format_double(r.bootstrap->p_upper);
  row += "\n";
  return row;
}

}  // namespace volstudy
