#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sca/balance.hpp"
#include "sca/clustering.hpp"
#include "sca/consensus.hpp"
#include "sca/io.hpp"
#include "sca/uncouple.hpp"

namespace sca {

enum class EnsembleMethod { nmf, kmeans };

struct MemberSpec {
    EnsembleMethod method = EnsembleMethod::nmf;
    int k = 2;
    int reps = 1;
};

struct PipelineConfig {
    // input: a CSV path or the name of a built-in dataset ("baseball")
    std::optional<std::filesystem::path> input;
    std::string builtin;
    CsvOptions csv;

    // ensemble consensus (used when kappa is unset)
    std::vector<MemberSpec> members;
    std::uint64_t seed_base = 1;

    // single-measure consensus (used when kappa is set)
    std::optional<int> kappa;
    KnnMetric metric = KnnMetric::euclidean;
    KnnMode mode = KnnMode::intersection;

    double balance_tol = 1e-10;
    int balance_max_iter = 10000;
    bool allow_uncoupled = false;

    SCAConfig sca;
    std::optional<std::uint64_t> sca_seed;  // default: seed_base + 1000000
    int restarts = 1;

    std::optional<std::filesystem::path> out_dir;
};

struct SolutionCount {
    std::vector<int> labels;  // canonical (first-occurrence relabeling)
    int count = 0;
};

struct RunReport {
    int detected_k = 0;
    double perron_gap = 0.0;
    std::vector<double> eigenvalues;
    ClusteringResult final_clusters;
    int k_used = 0;
    StopReason stop_reason = StopReason::max_iter;
    int iterations_run = 0;
    std::optional<int> error_count;  // present only when truth labels were supplied
    std::vector<SolutionCount> solution_histogram;
    int restarts = 1;
    std::map<std::string, double> stage_seconds;
    double total_seconds = 0.0;
    std::string consensus_kind;
    int balance_iterations = 0;
    double balance_residual = 0.0;
};

/// Ensemble members run with per-member seeds seed_base + index, so the
/// result does not depend on execution order.
std::vector<ClusteringResult> generate_ensemble(const DataMatrix& A,
                                                const std::vector<MemberSpec>& members,
                                                std::uint64_t seed_base);

/// Ensemble/knn -> consensus -> balance -> spectrum -> tracked evolution.
/// With restarts > 1 every restart r uses seed sca_seed + r and the most
/// frequent clustering (ties: lexicographically smallest canonical form)
/// is returned as final. Stage failures rethrow with the stage name
/// prefixed; artifacts produced so far are kept on disk.
RunReport run_pipeline(const PipelineConfig& cfg);

/// The balance -> spectrum -> evolution tail of the pipeline, starting
/// from an existing consensus matrix. Ignores cfg input/ensemble fields.
RunReport run_from_consensus(const ConsensusMatrix& S, const PipelineConfig& cfg,
                             const ClusteringResult* truth = nullptr);

std::string report_to_json(const RunReport& report);
std::string report_to_text(const RunReport& report, const std::vector<std::string>& names = {});

/// Canonical form: relabel so ids appear in first-occurrence order.
std::vector<int> canonical_labels(const std::vector<int>& labels);

}  // namespace sca
