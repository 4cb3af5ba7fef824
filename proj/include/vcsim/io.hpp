#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcsim/cluster.hpp"
#include "vcsim/montecarlo.hpp"
#include "vcsim/noise.hpp"

namespace vcsim {

inline constexpr const char* kVersion = "0.1.0";

/// Grid syntax "lo:hi:Npts[log|lin]"; log spacing by default for a bare
/// "lo:hi:N" is NOT assumed -- the suffix is required.
std::vector<double> parse_grid(const std::string& text);

struct ExperimentConfig {
    std::string scenario = "iii";  // i, ii, iii
    std::vector<double> pe_grid;
    uint64_t trials = 100000;
    uint64_t seed = 1;
    std::string metric = "raw-weight";  // raw-weight | decoder-failure
    std::string noise_interpretation = "total-4pe5";  // total-4pe5 | per-pauli-4pe5
    int threads = 0;  // 0 = auto
    int attempt_cap = 1000;
    int topup_max_factor = 8;
    std::string out_dir;

    ScenarioSpec scenario_spec() const;
    NoiseParams noise_base() const;
    void validate() const;

    std::string to_json() const;
    static ExperimentConfig from_json_file(const std::string& path);
};

std::string csv_header();
std::string csv_row(const SweepPoint& pt);

void write_text_file(const std::string& path, const std::string& content);

std::string summary_json(const ExperimentConfig& cfg, const std::vector<SweepPoint>& points,
                         const std::optional<Threshold>& threshold);

}  // namespace vcsim
