#include "vcsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace vcsim {

using nlohmann::json;

std::vector<double> parse_grid(const std::string& text) {
    // lo:hi:Npts[log|lin]
    auto fail = [&] { throw std::invalid_argument("bad grid '" + text + "', want lo:hi:N[log|lin]"); };
    size_t c1 = text.find(':');
    size_t c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) fail();
    double lo = 0, hi = 0;
    long npts = 0;
    bool log_spacing = true;
    try {
        lo = std::stod(text.substr(0, c1));
        hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        std::string rest = text.substr(c2 + 1);
        size_t pos = 0;
        npts = std::stol(rest, &pos);
        std::string suffix = rest.substr(pos);
        if (suffix == "log" || suffix.empty())
            log_spacing = true;
        else if (suffix == "lin")
            log_spacing = false;
        else
            fail();
    } catch (const std::invalid_argument&) {
        fail();
    }
    if (npts < 1 || lo <= 0.0 || hi <= lo) fail();
    std::vector<double> grid;
    if (npts == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (long i = 0; i < npts; ++i) {
        double t = static_cast<double>(i) / (npts - 1);
        grid.push_back(log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                                   : lo + t * (hi - lo));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

ScenarioSpec ExperimentConfig::scenario_spec() const {
    ScenarioSpec s;
    if (scenario == "i")
        s.scase = ScenarioCase::I;
    else if (scenario == "ii")
        s.scase = ScenarioCase::II;
    else if (scenario == "iii")
        s.scase = ScenarioCase::III;
    else
        throw std::invalid_argument("scenario must be i, ii or iii");
    if (metric == "raw-weight")
        s.metric = steane::LogicalMetric::kRawWeight;
    else if (metric == "decoder-failure")
        s.metric = steane::LogicalMetric::kDecoderFailure;
    else
        throw std::invalid_argument("metric must be raw-weight or decoder-failure");
    return s;
}

NoiseParams ExperimentConfig::noise_base() const {
    NoiseParams n;
    if (noise_interpretation == "total-4pe5")
        n.one_qubit_rate = OneQubitRate::kTotal4Pe5;
    else if (noise_interpretation == "per-pauli-4pe5")
        n.one_qubit_rate = OneQubitRate::kPerPauli4Pe5;
    else
        throw std::invalid_argument("noise interpretation must be total-4pe5 or per-pauli-4pe5");
    return n;
}

void ExperimentConfig::validate() const {
    scenario_spec();
    noise_base();
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (pe_grid.empty()) throw std::invalid_argument("empty p_e grid");
    for (size_t i = 0; i < pe_grid.size(); ++i) {
        if (pe_grid[i] <= 0.0 || pe_grid[i] >= 1.0)
            throw std::invalid_argument("grid values must lie in (0,1)");
        if (i > 0 && pe_grid[i] <= pe_grid[i - 1])
            throw std::invalid_argument("grid must be strictly increasing");
    }
    if (attempt_cap < 1) throw std::invalid_argument("attempt cap must be >= 1");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

std::string ExperimentConfig::to_json() const {
    json j;
    j["scenario"] = scenario;
    j["pe_grid"] = pe_grid;
    j["trials"] = trials;
    j["seed"] = seed;
    j["metric"] = metric;
    j["noise_interpretation"] = noise_interpretation;
    j["threads"] = threads;
    j["attempt_cap"] = attempt_cap;
    j["topup_max_factor"] = topup_max_factor;
    j["out_dir"] = out_dir;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(in);
    ExperimentConfig cfg;
    if (j.contains("scenario")) cfg.scenario = j["scenario"].get<std::string>();
    if (j.contains("pe_grid")) cfg.pe_grid = j["pe_grid"].get<std::vector<double>>();
    if (j.contains("grid")) cfg.pe_grid = parse_grid(j["grid"].get<std::string>());
    if (j.contains("trials")) cfg.trials = j["trials"].get<uint64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("metric")) cfg.metric = j["metric"].get<std::string>();
    if (j.contains("noise_interpretation"))
        cfg.noise_interpretation = j["noise_interpretation"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("attempt_cap")) cfg.attempt_cap = j["attempt_cap"].get<int>();
    if (j.contains("topup_max_factor")) cfg.topup_max_factor = j["topup_max_factor"].get<int>();
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    return cfg;
}

std::string csv_header() {
    return "p_e,trials,accepted,p_v_hat,f_hat,p_L_hat,ci_low,ci_high\n";
}

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}
}  // namespace

std::string csv_row(const SweepPoint& pt) {
    std::ostringstream os;
    os << fmt(pt.p_e) << ',' << pt.est.stats.trials << ',' << pt.est.stats.accepted << ','
       << fmt(pt.est.p_v_hat) << ',' << fmt(pt.est.f_hat) << ',' << fmt(pt.est.p_l.point) << ','
       << fmt(pt.est.p_l.ci_low) << ',' << fmt(pt.est.p_l.ci_high) << '\n';
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string summary_json(const ExperimentConfig& cfg, const std::vector<SweepPoint>& points,
                         const std::optional<Threshold>& threshold) {
    json j;
    j["version"] = kVersion;
    j["config"] = json::parse(cfg.to_json());
    json pts = json::array();
    for (const auto& pt : points) {
        json p;
        p["p_e"] = pt.p_e;
        p["trials"] = pt.est.stats.trials;
        p["accepted"] = pt.est.stats.accepted;
        p["errors"] = pt.est.stats.errors;
        p["p_L"] = pt.est.p_l.point;
        p["ci_low"] = pt.est.p_l.ci_low;
        p["ci_high"] = pt.est.p_l.ci_high;
        p["p_v_hat"] = pt.est.p_v_hat;
        p["f_hat"] = pt.est.f_hat;
        pts.push_back(p);
    }
    j["points"] = pts;
    if (threshold) {
        j["threshold"] = {{"p_th", threshold->p_th},
                          {"bracket_low", threshold->bracket_low},
                          {"bracket_high", threshold->bracket_high}};
    } else {
        j["threshold"] = nullptr;
    }
    return j.dump(2) + "\n";
}

}  // namespace vcsim
