// experiment.hpp
// Configuration and orchestration of the full pipeline:
// Chen primes -> residue slices -> majorants -> decompositions ->
// certificates, compared against the exact sumset of A_n.

#pragma once

#include "chensum/decomposition.hpp"
#include "chensum/majorant.hpp"
#include "chensum/numeric.hpp"
#include "chensum/sumset.hpp"
#include "chensum/wtrick.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chensum::experiment {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SubsetMode {
    enum class Kind { Full, Random, File };
    Kind kind = Kind::Full;
    std::uint64_t seed = 0;
    std::optional<Rational> fraction;  // defaults to alpha
    std::string path;

    // "full", "random:SEED", "random:SEED:FRACTION" or "file:PATH".
    static SubsetMode parse(const std::string& text);
    std::string str() const;
};

struct ExperimentConfig {
    std::uint64_t n = 10000;
    std::uint64_t t = 5;
    Rational alpha = 1;
    double lambda = 0.5;
    std::optional<double> delta;
    std::optional<double> epsilon;
    std::optional<std::uint64_t> k;
    std::optional<std::uint64_t> R;
    std::optional<Rational> c1;
    SubsetMode subset;
    bool include_two = true;
    double cap = 1.0;
    bool all_pairs = false;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    // Throws ConfigError.
    void validate() const;

    nlohmann::ordered_json to_json() const;
    static ExperimentConfig from_json(const nlohmann::ordered_json& doc);
};

// Runs body(i) for i in [0, count) on up to `threads` workers. Exceptions
// are rethrown on the calling thread, the lowest index first.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

// Chen primes in [1, n] reduced to the configured subset, ascending.
std::vector<std::uint64_t> select_subset(const std::vector<std::uint64_t>& chen, const ExperimentConfig& config);

struct Pipeline {
    ExperimentConfig config;
    std::uint64_t chen_total = 0;
    std::vector<std::uint64_t> A;
    Rational alpha_actual;
    Rational c1;
    wtrick::WContext ctx;
    wtrick::SliceResult sliced;
    std::vector<majorant::MajorantProfile> profiles;
    double c_global = 0;
    std::vector<decomposition::WeightedSlice> weighted;
    std::vector<decomposition::SpectralDecomposition> decomps;
    double delta = 0;
    double epsilon = 0;
    std::uint64_t k = 2;
};

// Every stage up to and including the decompositions.
Pipeline build_pipeline(const ExperimentConfig& config);

struct ExperimentResult {
    nlohmann::ordered_json doc;
    bool pass = false;
};

ExperimentResult run_theorem2_experiment(const ExperimentConfig& config);
ExperimentResult run_theorem2_experiment(const Pipeline& pipeline);

// Resolved parameters, including the schedule values, for --describe.
nlohmann::ordered_json describe(const ExperimentConfig& config);

}  // namespace chensum::experiment
