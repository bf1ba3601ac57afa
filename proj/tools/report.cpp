#include "report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace report {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // keep a float recognisable as one
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

void write(const Json& j, std::string& out, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        write(it.value(), out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(j[i], out, indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string serialize(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

Check check_below(std::string name, double value, double tol) {
  return {std::move(name), value, tol, "<", value < tol, 0.0};
}

Check check_at_least(std::string name, double value, double bound) {
  return {std::move(name), value, bound, ">=", value >= bound, 0.0};
}

Check check_equal(std::string name, double value, double expected) {
  return {std::move(name), value, expected, "==", value == expected, 0.0};
}

Check check_in(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, lo, "in", value >= lo && value <= hi, hi};
}

bool Envelope::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json Envelope::to_json() const {
  Json j;
  j["tool"] = tool;
  j["version"] = version;
  j["subcommand"] = subcommand;
  j["timestamp"] = timestamp;
  j["config"] = config;
  j["results"] = results;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    e["value"] = c.value;
    e["comparison"] = c.comparison;
    if (c.comparison == "in") {
      e["lower"] = c.tolerance;
      e["upper"] = c.upper;
    } else {
      e["tolerance"] = c.tolerance;
    }
    e["pass"] = c.pass;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  j["pass"] = all_pass();
  return j;
}

std::string Csv::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string cell(double v) {
  return std::isfinite(v) ? format_double(v) : std::string();
}

std::string cell(int v) { return std::to_string(v); }

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error(path + ": " + std::strerror(errno));
  const std::size_t n = std::fwrite(content.data(), 1, content.size(), f);
  const int err = errno;
  if (std::fclose(f) != 0 || n != content.size())
    throw std::runtime_error(path + ": " + std::strerror(err ? err : EIO));
}

}  // namespace report
