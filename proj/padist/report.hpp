#pragma once

// Verification records and their text / JSON renderings.  Nothing
// time-dependent is recorded, so a report is a function of config and seed.

#include <string>
#include <vector>

#include <json.hpp>

namespace padist {

struct Record {
  std::string suite;
  std::string id;  // unique within a report, e.g. "norms/mul@3^-1/4#2"
  std::string input, expected, computed;
  std::string status = "pass";  // pass | fail | skip
  std::string error;            // error kind when a check threw
  std::string repro;            // command line rerunning this record (failures only)
};

struct Report {
  nlohmann::json config;
  std::vector<Record> records;

  long count(const std::string& status) const;
  bool ok() const { return count("fail") == 0; }
  std::string text() const;
  nlohmann::json structured() const;
};

}  // namespace padist
