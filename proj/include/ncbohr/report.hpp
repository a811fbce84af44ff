#pragma once

#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ncbohr/inequalities.hpp"

namespace ncbohr::harness {

nlohmann::json report_to_json(const ineq::VerificationReport& rep);
std::string report_markdown(const ineq::VerificationReport& rep);
std::string reports_markdown(std::span<const ineq::VerificationReport> reps);

}  // namespace ncbohr::harness
