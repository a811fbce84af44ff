#include "ncbohr/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace ncbohr::harness {

using json = nlohmann::json;

json report_to_json(const ineq::VerificationReport& rep) {
  json j;
  j["inequality"] = rep.inequality;
  j["digest"] = rep.digest;
  j["verdict"] = rep.pass ? "pass" : "fail";
  j["tolerance"] = rep.tol;
  j["level"] = rep.level;
  j["hypothesis"] = json{{"kind", to_string(rep.hypothesis.kind)},
                         {"level", rep.hypothesis.level},
                         {"margin", rep.hypothesis.margin},
                         {"r", rep.hypothesis.r},
                         {"verdict", to_string(rep.hypothesis.verdict)}};
  json margins = json::array();
  for (const auto& m : rep.margins) {
    margins.push_back(
        json{{"check", m.check}, {"lhs", m.lhs}, {"rhs", m.rhs}, {"slack", m.slack()}});
  }
  j["margins"] = margins;
  j["notes"] = rep.notes;
  return j;
}

std::string report_markdown(const ineq::VerificationReport& rep) {
  std::ostringstream os;
  os.precision(12);
  os << "### " << rep.inequality << (rep.digest.empty() ? "" : " (" + rep.digest + ")")
     << " - " << (rep.pass ? "pass" : "FAIL") << "\n\n";
  os << "hypothesis: " << to_string(rep.hypothesis.kind) << " -> "
     << to_string(rep.hypothesis.verdict) << " (level " << rep.hypothesis.level << ")\n\n";
  os << "| check | lhs | rhs | slack |\n|---|---|---|---|\n";
  for (const auto& m : rep.margins) {
    os << "| " << m.check << " | " << m.lhs << " | " << m.rhs << " | " << m.slack()
       << " |\n";
  }
  for (const auto& n : rep.notes) os << "\n- " << n;
  os << "\n";
  return os.str();
}

std::string reports_markdown(std::span<const ineq::VerificationReport> reps) {
  std::ostringstream os;
  for (const auto& r : reps) os << report_markdown(r) << "\n";
  return os.str();
}

}  // namespace ncbohr::harness
