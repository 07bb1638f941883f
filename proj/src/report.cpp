#include "dimcert/report.hpp"

#include <chrono>
#include <cstdio>

namespace dimcert::io {

std::uint64_t content_digest(const nlohmann::json& inputs) {
    // nlohmann::json objects iterate in sorted key order, so dump() is
    // already canonical for a given value.
    const std::string s = inputs.dump();
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

nlohmann::json RunReport::to_json() const {
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(content_digest(inputs)));
    nlohmann::json timings = nlohmann::json::array();
    for (const auto& [stage, ms] : timings_ms)
        timings.push_back(nlohmann::json{{"stage", stage}, {"ms", ms}});
    return nlohmann::json{{"command", command},
                          {"inputs_digest", std::string(digest)},
                          {"results", results},
                          {"timings_ms", std::move(timings)},
                          {"tool_version", kToolVersion}};
}

StageTimer::StageTimer()
    : start_ns_(static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(
              std::chrono::steady_clock::now().time_since_epoch())
              .count())) {}

double StageTimer::elapsed_ms() const {
    const auto now = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now().time_since_epoch())
            .count());
    return static_cast<double>(now - start_ns_) * 1e-6;
}

} // namespace dimcert::io
