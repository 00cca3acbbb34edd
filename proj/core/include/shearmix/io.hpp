#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace shearmix {

/// Write a CSV table: comma separator, '.' decimal point, one header row,
/// LF line endings. columns[i].second.size() must agree across columns.
void write_csv(const std::string& path,
               const std::vector<std::pair<std::string, std::vector<double>>>&
                   columns);

/// Flat key=value config file ('#' comments, blank lines ignored).
std::map<std::string, std::string> parse_config(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// FNV-1a 64-bit hash of the canonical (sorted key=value) config rendering,
/// as 16 hex digits; directory names for run outputs.
std::string config_hash(const std::map<std::string, std::string>& config);
std::uint64_t fnv1a(const std::string& data);

/// Typed getters with defaults.
double config_double(const std::map<std::string, std::string>& c,
                     const std::string& key, double fallback);
int config_int(const std::map<std::string, std::string>& c,
               const std::string& key, int fallback);
std::string config_string(const std::map<std::string, std::string>& c,
                          const std::string& key, const std::string& fallback);
std::vector<double> config_double_list(
    const std::map<std::string, std::string>& c, const std::string& key,
    const std::vector<double>& fallback);

}  // namespace shearmix
