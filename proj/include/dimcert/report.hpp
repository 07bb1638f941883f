#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dimcert::io {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64 over the canonical (sorted-key, no-whitespace) dump of `inputs`.
std::uint64_t content_digest(const nlohmann::json& inputs);

/// Machine-readable run record.  Byte-deterministic for fixed inputs and
/// seed once "timings_ms" is stripped.
struct RunReport {
    std::string command;
    nlohmann::json inputs;
    nlohmann::json results;
    std::vector<std::pair<std::string, double>> timings_ms;

    void add_timing(const std::string& stage, double ms) { timings_ms.emplace_back(stage, ms); }
    nlohmann::json to_json() const;
};

/// Wall-clock helper for RunReport timings.
class StageTimer {
public:
    StageTimer();
    double elapsed_ms() const;

private:
    std::uint64_t start_ns_;
};

} // namespace dimcert::io
