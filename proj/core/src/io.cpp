#include "shearmix/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shearmix {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

void write_csv(const std::string& path,
               const std::vector<std::pair<std::string, std::vector<double>>>&
                   columns) {
  if (columns.empty()) throw std::invalid_argument("write_csv: no columns");
  size_t rows = columns.front().second.size();
  for (const auto& [name, vals] : columns)
    if (vals.size() != rows)
      throw std::invalid_argument("write_csv: ragged column " + name);
  std::ofstream out(path, std::ios::binary);  // binary keeps LF on any host
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out.precision(17);
  for (size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c].first;
  out << "\n";
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << columns[c].second[r];
    out << "\n";
  }
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    out[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const std::map<std::string, std::string>& config) {
  std::ostringstream canon;
  for (const auto& [k, v] : config) canon << k << "=" << v << "\n";
  std::uint64_t h = fnv1a(canon.str());
  std::ostringstream hex;
  hex << std::hex;
  for (int i = 15; i >= 0; --i) hex << "0123456789abcdef"[(h >> (4 * i)) & 15];
  return hex.str();
}

double config_double(const std::map<std::string, std::string>& c,
                     const std::string& key, double fallback) {
  auto it = c.find(key);
  return it == c.end() ? fallback : std::stod(it->second);
}

int config_int(const std::map<std::string, std::string>& c,
               const std::string& key, int fallback) {
  auto it = c.find(key);
  return it == c.end() ? fallback : std::stoi(it->second);
}

std::string config_string(const std::map<std::string, std::string>& c,
                          const std::string& key,
                          const std::string& fallback) {
  auto it = c.find(key);
  return it == c.end() ? fallback : it->second;
}

std::vector<double> config_double_list(
    const std::map<std::string, std::string>& c, const std::string& key,
    const std::vector<double>& fallback) {
  auto it = c.find(key);
  if (it == c.end()) return fallback;
  std::vector<double> out;
  std::istringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

}  // namespace shearmix
