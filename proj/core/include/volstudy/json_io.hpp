// JSON representations of fits and study results, plus the CSV row/table
// emitters used by the command-line tools.
#pragma once

#include <string>

#include "json.hpp"
#include "volstudy/cross_section.hpp"
#include "volstudy/event_study.hpp"
#include "volstudy/garch.hpp"

namespace volstudy {

void to_json(nlohmann::json& j, const GarchParams& p);
void from_json(const nlohmann::json& j, GarchParams& p);

void to_json(nlohmann::json& j, const GarchFit& f);
void from_json(const nlohmann::json& j, GarchFit& f);

void to_json(nlohmann::json& j, const Chi2Test& t);
void to_json(nlohmann::json& j, const BootstrapResult& b);
void to_json(nlohmann::json& j, const CavResult& r);
void to_json(nlohmann::json& j, const GroupStudyResult& g);
void to_json(nlohmann::json& j, const RegressionResult& r);

// Header and one row of the summary table (window label, CAV, % vol,
// asymptotic p, bootstrap p), plus identifying columns.
std::string cav_csv_header();
std::string cav_csv_row(const CavResult& r);

}  // namespace volstudy
