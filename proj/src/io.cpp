#include "tqc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tqc {

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_csv(const std::string& path, const CsvTable& t) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_csv: cannot open " + path);
    for (const auto& c : t.header_comments) os << "# " << c << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
}

namespace {
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}
} // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_csv: cannot open " + path);
    CsvTable t;
    std::string line;
    bool have_columns = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
            t.header_comments.push_back(line.substr(start));
            continue;
        }
        if (!have_columns) {
            t.columns = split_csv_line(line);
            have_columns = true;
        } else {
            t.rows.push_back(split_csv_line(line));
        }
    }
    return t;
}

namespace {
std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}
} // namespace

bool Config::has(const std::string& key) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
        if (it->first == key) return true;
    return false;
}

std::string Config::get(const std::string& key, const std::string& def) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
        if (it->first == key) return it->second;
    return def;
}

double Config::get_num(const std::string& key, double def) const {
    const std::string v = get(key);
    return v.empty() ? def : std::stod(v);
}

void Config::set(const std::string& key, const std::string& value) {
    entries.emplace_back(key, value);
}

std::string Config::canonical_text() const {
    std::vector<std::pair<std::string, std::string>> eff;
    for (const auto& [k, v] : entries) {
        bool replaced = false;
        for (auto& e : eff)
            if (e.first == k) {
                e.second = v;
                replaced = true;
            }
        if (!replaced) eff.emplace_back(k, v);
    }
    std::sort(eff.begin(), eff.end());
    std::string out;
    for (const auto& [k, v] : eff) out += k + " = " + v + "\n";
    return out;
}

Config parse_config_text(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == '[') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value', got: " + t);
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

Config load_config_file(const std::string& path) { return parse_config_text(read_file(path)); }

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_file: cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_file: cannot open " + path);
    os << content;
}

} // namespace tqc
