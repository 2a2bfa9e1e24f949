#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace polycomm {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit over the raw bytes, hex-encoded.
std::string digest_hex(const std::string& bytes);

// Wraps a command result: config echo, input digests, results block,
// wall-clock and version. The results block alone carries the replayable
// payload; timing lives outside it.
nlohmann::json make_report(const std::string& command, const nlohmann::json& config,
                           const std::vector<std::pair<std::string, std::string>>& input_files,
                           const nlohmann::json& results, double wall_ms);

}  // namespace polycomm
