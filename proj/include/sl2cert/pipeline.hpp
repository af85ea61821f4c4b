#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace sl2cert {

struct PipelineConfig {
    int p = 3;
    int s = 2;           // residue degree of k = F_{p^s}; even for odd p
    int precision = 12;  // truncation exponent N
    int cap = 20;        // lattice walk step limit
    bool paranoid = false;
    std::uint64_t seed = 0;
    bool large = false;  // opt-in for p >= 5
    int threads = 0;     // 0 = library default

    void validate() const;
};

/// Full verification pipeline; the returned report is deterministic for a
/// fixed config except for the top-level "timings_ms" object.
nlohmann::json run_full(const PipelineConfig& cfg);

/// One stage for debugging: chartable | modular | lattice | ext | fiber.
nlohmann::json run_stage(const PipelineConfig& cfg, const std::string& stage);

void export_chartable_csv(const PipelineConfig& cfg, std::ostream& out);
void export_decomposition_csv(const PipelineConfig& cfg, std::ostream& out);

/// 0 pass, 1 mathematical-check failure, 2 precision failure.
int report_exit_code(const nlohmann::json& report);

}  // namespace sl2cert
