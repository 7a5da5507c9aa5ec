#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tqc {

// 12 significant digits: the bit-exact formatting contract of all CSV output
std::string fmt12(double v);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

struct CsvTable {
    std::vector<std::string> header_comments;  // emitted as "# <line>"
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::string& path, const CsvTable& t);
CsvTable read_csv(const std::string& path);

// flat "key = value" configuration text; ordered, last assignment wins
struct Config {
    std::vector<std::pair<std::string, std::string>> entries;

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& def = "") const;
    double get_num(const std::string& key, double def) const;
    void set(const std::string& key, const std::string& value);
    std::string canonical_text() const;  // sorted, normalized; input to the config hash
    std::string hash() const { return hex64(fnv1a64(canonical_text())); }
};

Config parse_config_text(const std::string& text);
Config load_config_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace tqc
