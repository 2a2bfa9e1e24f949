#include "polycomm/report.hpp"

#include <fstream>
#include <sstream>

namespace polycomm {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string digest_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json make_report(const std::string& command, const nlohmann::json& config,
                           const std::vector<std::pair<std::string, std::string>>& input_files,
                           const nlohmann::json& results, double wall_ms) {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    nlohmann::json digests = nlohmann::json::object();
    for (const auto& [path, content] : input_files) digests[path] = digest_hex(content);
    j["inputs"] = digests;
    j["results"] = results;
    j["wall_ms"] = wall_ms;
    j["version"] = POLYCOMM_VERSION;
    return j;
}

}  // namespace polycomm
