#include "nlslab/report.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlslab/errors.hpp"

namespace nlslab {

std::string code_version() { return "nlslab 1.0.0"; }

std::vector<std::string> csv_columns(const std::string& csv) {
  const std::string header = csv.substr(0, csv.find('\n'));
  std::vector<std::string> cols;
  std::stringstream ss(header);
  std::string c;
  while (std::getline(ss, c, ',')) cols.push_back(c);
  return cols;
}

std::string RunRecord::config_hash() const {
  const std::string s = command + "\n" + config.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

int RunRecord::exit_code() const {
  int code = 0;
  for (const auto& c : checks)
    if (!c.passed) code = std::max(code, c.soundness ? 2 : 1);
  return code;
}

std::string RunRecord::summary() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  os << "run id: " << config_hash() << "\n";
  for (const auto& t : tables) os << "table: " << t.name << ".csv\n";
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  os << "exit code: " << exit_code() << "\n";
  return os.str();
}

nlohmann::json RunRecord::manifest() const {
  nlohmann::json m;
  m["command"] = command;
  m["code_version"] = code_version();
  m["run_id"] = config_hash();
  m["config"] = config;
  m["seeds"] = seeds;
  m["guards"] = guards;
  m["results"] = results;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  m["timestamp"] = buf;
  auto& ts = m["tables"] = nlohmann::json::array();
  for (const auto& t : tables)
    ts.push_back({{"file", t.name + ".csv"}, {"schema_version", kCsvSchemaVersion}, {"columns", csv_columns(t.csv)}});
  auto& cs = m["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name}, {"passed", c.passed}, {"soundness", c.soundness}, {"detail", c.detail}});
  m["notes"] = notes;
  m["exit_code"] = exit_code();
  return m;
}

std::string resolve_output_dir(const std::string& cli_out) {
  const char* env = std::getenv("NLSLAB_OUT");
  if (env && *env) return env;
  return cli_out;
}

static void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ValidationError("out", "cannot write " + p.string());
  f << content;
}

int emit_report(const RunRecord& rec, const std::string& dir) {
  if (dir.empty()) throw ValidationError("out", "empty output directory");
  const std::filesystem::path root(dir);
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) throw ValidationError("out", "cannot create " + dir + ": " + ec.message());
  for (const auto& t : rec.tables) write_file(root / (t.name + ".csv"), t.csv);
  write_file(root / "manifest.json", rec.manifest().dump(2) + "\n");
  if (!rec.tables.empty() || !rec.checks.empty()) write_file(root / "summary.txt", rec.summary());
  return rec.exit_code();
}

}  // namespace nlslab
