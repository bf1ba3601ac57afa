#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace report {

using Json = nlohmann::ordered_json;

// %.17g; NaN and infinities become null in JSON and empty cells in CSV.
std::string format_double(double v);

// Two-space indented JSON with fields in insertion order and every float
// written with 17 significant digits. Ends with a newline.
std::string serialize(const Json& j);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string comparison;  // "<", "<=", ">=", "==", "in"
  bool pass = false;
  double upper = 0.0;      // for "in": value in [tolerance, upper]
};

Check check_below(std::string name, double value, double tol);
Check check_at_least(std::string name, double value, double bound);
Check check_equal(std::string name, double value, double expected);
Check check_in(std::string name, double value, double lo, double hi);

struct Envelope {
  std::string tool = "bolza_verify";
  std::string version;
  std::string subcommand;
  std::string timestamp;
  Json config = Json::object();
  Json results = Json::object();
  std::vector<Check> checks;

  bool all_pass() const;
  Json to_json() const;
};

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  // Comma separated, LF line endings, header first.
  std::string str() const;
};

std::string cell(double v);
std::string cell(int v);

// Writes `content` to `path`, or to stdout when path is empty or "-".
// Throws std::runtime_error carrying the system error text.
void write_output(const std::string& path, const std::string& content);

}  // namespace report
