#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace nlslab {

inline constexpr int kCsvSchemaVersion = 1;

struct InvariantCheck {
  std::string name;
  bool passed = true;
  bool soundness = false;  // a failed soundness check maps to exit code 2
  std::string detail;      // witness or measured values
};

struct TableOutput {
  std::string name;  // file stem; written as <name>.csv
  std::string csv;   // header line first
};

// Everything one CLI run emits: manifest.json, one CSV per table and
// summary.txt.
struct RunRecord {
  std::string command;
  nlohmann::json config = nlohmann::json::object();  // full echo, defaults included
  std::vector<std::uint64_t> seeds;
  std::vector<TableOutput> tables;
  std::vector<InvariantCheck> checks;
  nlohmann::json guards = nlohmann::json::object();   // guard name -> outcome
  nlohmann::json results = nlohmann::json::object();  // command-specific summary values
  std::vector<std::string> notes;

  // Hex FNV-1a of the command and the config echo.
  std::string config_hash() const;
  // 0 if every check passed, 2 if a soundness check failed, 1 otherwise.
  int exit_code() const;
  std::string summary() const;
  nlohmann::json manifest() const;
};

// --out, unless NLSLAB_OUT is set and non-empty.
std::string resolve_output_dir(const std::string& cli_out);

// Creates the directory and writes the record; returns exit_code().
int emit_report(const RunRecord& rec, const std::string& dir);

// Columns of a CSV header line.
std::vector<std::string> csv_columns(const std::string& csv);

std::string code_version();

}  // namespace nlslab
