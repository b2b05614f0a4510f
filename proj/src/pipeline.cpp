#include "sca/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sca/datasets.hpp"
#include "sca/errors.hpp"

namespace sca {

std::vector<ClusteringResult> generate_ensemble(const DataMatrix& A,
                                                const std::vector<MemberSpec>& members,
                                                std::uint64_t seed_base) {
    if (members.empty()) throw DomainError("ensemble needs at least one member spec");
    std::vector<ClusteringResult> ensemble;
    std::uint64_t index = 0;
    for (const auto& spec : members) {
        if (spec.reps < 1) throw DomainError("member repetitions must be >= 1");
        if (spec.k < 2) throw DomainError("member k must be >= 2");
        for (int rep = 0; rep < spec.reps; ++rep, ++index) {
            const std::uint64_t seed = seed_base + index;
            if (spec.method == EnsembleMethod::nmf) {
                ensemble.push_back(assign_from_nmf(nmf_mu(A, spec.k, seed)));
                ensemble.back().seed = seed;
            } else {
                ensemble.push_back(kmeans(A, spec.k, seed));
            }
        }
    }
    return ensemble;
}

std::vector<int> canonical_labels(const std::vector<int>& labels) {
    std::vector<int> out(labels.size());
    std::map<int, int> remap;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = remap.emplace(labels[i], static_cast<int>(remap.size()) + 1);
        out[i] = it->second;
    }
    return out;
}

namespace {

class StageTimer {
public:
    explicit StageTimer(std::map<std::string, double>& sink) : sink_(sink) {}
    template <typename F>
    auto run(const std::string& stage, F&& f) {
        const auto start = std::chrono::steady_clock::now();
        try {
            auto result = f();
            sink_[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                               .count();
            return result;
        } catch (const std::exception& e) {
            rethrow_with_stage(stage, e);
        }
    }

private:
    [[noreturn]] static void rethrow_with_stage(const std::string& stage,
                                                const std::exception& e) {
        const std::string msg = "stage " + stage + ": " + e.what();
        if (dynamic_cast<const SupportError*>(&e)) throw SupportError(msg);
        if (auto* c = dynamic_cast<const ConvergenceError*>(&e))
            throw ConvergenceError(msg, c->residual_history);
        if (dynamic_cast<const ExhaustionError*>(&e)) throw ExhaustionError(msg);
        if (auto* p = dynamic_cast<const ParseError*>(&e)) throw ParseError(msg, p->line, p->column);
        if (auto* d = dynamic_cast<const DegeneratePartitionError*>(&e))
            throw DegeneratePartitionError(msg, d->colliding_value);
        if (dynamic_cast<const DimensionError*>(&e)) throw DimensionError(msg);
        if (dynamic_cast<const DomainError*>(&e)) throw DomainError(msg);
        throw std::runtime_error(msg);
    }
    std::map<std::string, double>& sink_;
};

}  // namespace

RunReport run_pipeline(const PipelineConfig& cfg) {
    std::map<std::string, double> load_seconds;
    StageTimer timer(load_seconds);

    // --- input ---------------------------------------------------------
    LoadedData loaded = timer.run("load", [&] {
        if (cfg.builtin == "baseball") {
            LoadedData d;
            d.data = datasets::baseball_data();
            return d;
        }
        if (!cfg.builtin.empty()) throw DomainError("unknown builtin dataset: " + cfg.builtin);
        if (!cfg.input) throw DomainError("pipeline needs --input or a builtin dataset");
        return load_data(*cfg.input, cfg.csv);
    });

    // --- consensus ------------------------------------------------------
    ConsensusMatrix S = timer.run("consensus", [&] {
        if (cfg.kappa) return knn_consensus(loaded.data, *cfg.kappa, cfg.metric, cfg.mode);
        auto ensemble = generate_ensemble(loaded.data, cfg.members, cfg.seed_base);
        return consensus_sum(ensemble);
    });

    RunReport report =
        run_from_consensus(S, cfg, loaded.truth ? &*loaded.truth : nullptr);
    for (const auto& [stage, seconds] : load_seconds) report.stage_seconds[stage] = seconds;
    return report;
}

RunReport run_from_consensus(const ConsensusMatrix& S, const PipelineConfig& cfg,
                             const ClusteringResult* truth) {
    const auto t_start = std::chrono::steady_clock::now();
    RunReport report;
    StageTimer timer(report.stage_seconds);

    report.consensus_kind = to_string(S.kind);
    if (cfg.out_dir) write_consensus(S, *cfg.out_dir / "S.txt");

    // --- balance --------------------------------------------------------
    BalancedMatrix B = timer.run("balance", [&] {
        BalanceOptions opts;
        opts.tol = cfg.balance_tol;
        opts.max_iter = cfg.balance_max_iter;
        opts.allow_uncoupled = cfg.allow_uncoupled;
        return sinkhorn_knopp(S, opts);
    });
    report.balance_iterations = B.iterations;
    report.balance_residual = B.residual;
    if (cfg.out_dir) {
        write_matrix(B.P, *cfg.out_dir / "P.txt");
        write_vector(B.d, *cfg.out_dir / "d.txt");
    }

    // --- spectrum ---------------------------------------------------------
    Spectrum spec = timer.run("spectrum", [&] { return sym_eigen(B.P); });
    const PerronCluster perron = perron_cluster(spec);
    report.detected_k = perron.k;
    report.perron_gap = perron.gap;
    report.eigenvalues = spec.eigenvalues;
    if (cfg.out_dir) write_vector(spec.eigenvalues, *cfg.out_dir / "spectrum.txt");

    // --- tracked evolution -----------------------------------------------
    const std::uint64_t sca_seed = cfg.sca_seed ? *cfg.sca_seed : cfg.seed_base + 1000000;
    const int restarts = std::max(1, cfg.restarts);
    struct Tally {
        int count = 0;
        SCAResult representative;
    };
    std::map<std::vector<int>, Tally> tallies;
    timer.run("sca", [&] {
        for (int r = 0; r < restarts; ++r) {
            SCAConfig run_cfg = cfg.sca;
            if (!run_cfg.k_override) run_cfg.k_override = perron.k;
            run_cfg.seed = sca_seed + static_cast<std::uint64_t>(r);
            run_cfg.record_trace = cfg.sca.record_trace && restarts == 1;
            SCAResult result = run_sca(B, run_cfg);
            auto key = canonical_labels(result.clusters.labels);
            auto& slot = tallies[key];
            if (slot.count == 0) slot.representative = std::move(result);
            ++slot.count;
        }
        return 0;
    });

    // modal clustering; ties resolve to the smallest canonical label vector
    const Tally* best = nullptr;
    for (const auto& [key, tally] : tallies) {
        if (!best || tally.count > best->count) best = &tally;
    }
    report.restarts = restarts;
    report.k_used = best->representative.k_used;
    report.stop_reason = best->representative.stop_reason;
    report.iterations_run = best->representative.iterations_run;
    report.final_clusters = best->representative.clusters;
    for (const auto& [key, tally] : tallies)
        report.solution_histogram.push_back({key, tally.count});
    std::sort(report.solution_histogram.begin(), report.solution_histogram.end(),
              [](const SolutionCount& a, const SolutionCount& b) { return a.count > b.count; });

    if (truth) report.error_count = clustering_errors(report.final_clusters, *truth);

    if (cfg.out_dir) {
        std::ofstream clusters(*cfg.out_dir / "clusters.csv");
        clusters << "index,label\n";
        for (std::size_t i = 0; i < report.final_clusters.labels.size(); ++i)
            clusters << (i + 1) << ',' << report.final_clusters.labels[i] << "\n";
        if (!best->representative.trace.empty()) {
            std::ofstream trace(*cfg.out_dir / "trace.csv");
            trace << "t,entry,x,label\n";
            for (const auto& snap : best->representative.trace)
                for (std::size_t i = 0; i < snap.x.size(); ++i) {
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "%.17g", snap.x[i]);
                    trace << snap.t << ',' << (i + 1) << ',' << buf << ',' << snap.labels[i]
                          << "\n";
                }
        }
    }

    report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    if (cfg.out_dir) {
        std::ofstream json(*cfg.out_dir / "report.json");
        json << report_to_json(report) << "\n";
        std::ofstream text(*cfg.out_dir / "report.txt");
        text << report_to_text(report, cfg.builtin == "baseball" ? datasets::baseball_names()
                                                                 : std::vector<std::string>{});
    }
    return report;
}

std::string report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["detected_k"] = report.detected_k;
    j["perron_gap"] = report.perron_gap;
    j["eigenvalues"] = report.eigenvalues;
    j["k_used"] = report.k_used;
    j["labels"] = report.final_clusters.labels;
    j["stop_reason"] = report.stop_reason == StopReason::stabilized ? "stabilized" : "max_iter";
    j["iterations_run"] = report.iterations_run;
    j["restarts"] = report.restarts;
    j["consensus_kind"] = report.consensus_kind;
    j["balance_iterations"] = report.balance_iterations;
    j["balance_residual"] = report.balance_residual;
    if (report.error_count) j["errors"] = *report.error_count;
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& solution : report.solution_histogram)
        hist.push_back({{"labels", solution.labels}, {"count", solution.count}});
    j["solution_histogram"] = hist;
    j["stage_seconds"] = report.stage_seconds;
    j["total_seconds"] = report.total_seconds;
    return j.dump(2);
}

std::string report_to_text(const RunReport& report, const std::vector<std::string>& names) {
    std::ostringstream out;
    out << "consensus " << report.consensus_kind << "\n";
    out << "detected_k " << report.detected_k << " (gap " << report.perron_gap << ")\n";
    out << "eigenvalues";
    for (double ev : report.eigenvalues) out << ' ' << ev;
    out << "\n";
    out << "k_used " << report.k_used << "\n";
    out << "stop "
        << (report.stop_reason == StopReason::stabilized ? "stabilized" : "max_iter") << " at t="
        << report.iterations_run << "\n";
    if (report.error_count) out << "errors " << *report.error_count << "\n";
    out << "restarts " << report.restarts << "; distinct solutions "
        << report.solution_histogram.size() << "\n";
    const auto& labels = report.final_clusters.labels;
    for (int c = 1; c <= report.k_used; ++c) {
        out << "cluster " << c << ":";
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == c) {
                if (i < names.size()) out << ' ' << names[i];
                else out << ' ' << (i + 1);
            }
        out << "\n";
    }
    return out.str();
}

}  // namespace sca
