#include "padist/report.hpp"

namespace padist {

long Report::count(const std::string& status) const {
  long n = 0;
  for (const auto& r : records) n += r.status == status;
  return n;
}

std::string Report::text() const {
  std::string out = "config: " + config.dump() + "\n";
  for (const auto& r : records) {
    std::string tag = r.status == "pass" ? "PASS" : r.status == "fail" ? "FAIL" : "SKIP";
    out += "[" + tag + "] " + r.id;
    if (!r.input.empty()) out += "  input: " + r.input;
    out += "\n";
    if (!r.expected.empty()) out += "    expected: " + r.expected + "\n";
    if (!r.computed.empty()) out += "    computed: " + r.computed + "\n";
    if (!r.error.empty()) out += "    error: " + r.error + "\n";
    if (!r.repro.empty()) out += "    repro: " + r.repro + "\n";
  }
  out += "summary: " + std::to_string(count("pass")) + " passed, " + std::to_string(count("fail")) + " failed, " +
         std::to_string(count("skip")) + " skipped\n";
  return out;
}

nlohmann::json Report::structured() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j = {{"suite", r.suite}, {"id", r.id},           {"input", r.input},
                        {"expected", r.expected}, {"computed", r.computed}, {"status", r.status}};
    if (!r.error.empty()) j["error"] = r.error;
    if (!r.repro.empty()) j["repro"] = r.repro;
    recs.push_back(j);
  }
  return {{"config", config},
          {"records", recs},
          {"summary", {{"passed", count("pass")}, {"failed", count("fail")}, {"skipped", count("skip")}}}};
}

}  // namespace padist
