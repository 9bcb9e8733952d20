#include "adelic/report.hpp"

#include <sstream>

#include <json.hpp>

namespace adelic {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json base(const VerifyReport& r) {
  ordered_json j;
  j["schema"] = 1;
  j["surface"] = r.surface;
  j["field"] = r.field;
  j["divisor"] = r.divisor;
  j["f"] = r.f;
  j["th1_rhs"] = r.th1_rhs;
  j["th2_rhs"] = r.th2_rhs;
  j["chi_diff"] = r.chi_diff;
  j["self_intersection"] = r.self_intersection;
  j["K_dot_D"] = r.k_dot_d;
  j["lemma1_ok"] = r.lemma1_ok;
  j["dminusc_ok"] = r.dminusc_ok;
  j["rr_ok"] = r.rr_ok;
  j["pass"] = r.pass;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace

std::string to_json(const VerifyReport& r) { return base(r).dump(2); }

std::string to_json(const std::vector<VerifyReport>& rs) {
  ordered_json j;
  j["schema"] = 1;
  bool all = true;
  for (const auto& r : rs) all = all && r.pass;
  j["pass"] = all;
  j["count"] = rs.size();
  j["reports"] = ordered_json::array();
  for (const auto& r : rs) j["reports"].push_back(base(r));
  return j.dump(2);
}

std::string to_json(const IntersectReport& r) {
  ordered_json j;
  j["schema"] = 1;
  j["surface"] = r.surface;
  j["field"] = r.field;
  j["S"] = r.s_divisor;
  j["T"] = r.t_divisor;
  ordered_json vals;
  for (std::size_t i = 0; i < r.methods.size(); ++i) vals[r.methods[i]] = r.values[i];
  j["values"] = vals;
  j["agree"] = r.agree;
  j["elapsed_ms"] = r.elapsed_ms;
  return j.dump(2);
}

std::string to_json(const ReciprocityReport& r) {
  ordered_json j;
  j["schema"] = 1;
  j["surface"] = r.surface;
  j["field"] = r.field;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["passed"] = r.passed;
  j["failures"] = ordered_json::array();
  for (const auto& s : r.failures) {
    ordered_json fj;
    fj["form"] = s.form;
    fj["where"] = s.curve_or_point;
    fj["law"] = s.along_curve ? "along_curve" : "around_point";
    j["failures"].push_back(fj);
  }
  j["elapsed_ms"] = r.elapsed_ms;
  return j.dump(2);
}

std::string to_markdown(const std::vector<VerifyReport>& rs) {
  std::ostringstream os;
  os << "| divisor | f | th1 | th2 | chi_diff | D.D | K.D | lemma1 | d-c | RR | pass |\n";
  os << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  auto mark = [](bool b) { return b ? "ok" : "FAIL"; };
  for (const auto& r : rs)
    os << "| " << r.divisor << " | " << r.f << " | " << r.th1_rhs << " | " << r.th2_rhs << " | " << r.chi_diff
       << " | " << r.self_intersection << " | " << r.k_dot_d << " | " << mark(r.lemma1_ok) << " | "
       << mark(r.dminusc_ok) << " | " << mark(r.rr_ok) << " | " << mark(r.pass) << " |\n";
  return os.str();
}

std::string to_markdown(const IntersectReport& r) {
  std::ostringstream os;
  os << "intersection of " << r.s_divisor << " and " << r.t_divisor << " on " << r.surface << "\n\n";
  os << "| method | value |\n|---|---|\n";
  for (std::size_t i = 0; i < r.methods.size(); ++i)
    os << "| " << r.methods[i] << " | " << r.values[i] << " |\n";
  os << "\nagreement: " << (r.agree ? "ok" : "FAIL") << "\n";
  return os.str();
}

std::string to_markdown(const ReciprocityReport& r) {
  std::ostringstream os;
  os << "reciprocity on " << r.surface << " over " << r.field << ": " << r.passed << "/" << r.samples
     << " samples exact\n";
  for (const auto& s : r.failures)
    os << "- FAIL " << (s.along_curve ? "along " : "around ") << s.curve_or_point << " for " << s.form << "\n";
  return os.str();
}

}  // namespace adelic
