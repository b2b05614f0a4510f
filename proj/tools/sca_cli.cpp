// Command-line driver: build clustering ensembles, assemble and balance
// consensus matrices, inspect spectra, and run the tracked-evolution
// clustering engines.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sca/balance.hpp"
#include "sca/clustering.hpp"
#include "sca/consensus.hpp"
#include "sca/datasets.hpp"
#include "sca/eigen.hpp"
#include "sca/errors.hpp"
#include "sca/io.hpp"
#include "sca/pipeline.hpp"
#include "sca/uncouple.hpp"
#include "sca/verify.hpp"

namespace fs = std::filesystem;
using namespace sca;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNoConvergence = 4;
constexpr int kExitExhaustion = 5;

struct CsvFlags {
    std::string orient = "elements";
    bool no_header = false;
    std::string label_column;

    CsvOptions to_options() const {
        CsvOptions opts;
        opts.orientation = orient == "attributes" ? CsvOrientation::attributes_in_rows
                                                  : CsvOrientation::elements_in_rows;
        opts.has_header = !no_header;
        if (!label_column.empty()) opts.label_column = label_column;
        return opts;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--orient", orient, "CSV rows hold 'elements' or 'attributes'")
            ->check(CLI::IsMember({"elements", "attributes"}));
        cmd->add_flag("--no-header", no_header, "CSV has no header row");
        cmd->add_option("--label-col", label_column,
                        "ground-truth column (header name or 1-based index)");
    }
};

std::vector<MemberSpec> parse_members(const std::vector<std::string>& specs) {
    std::vector<MemberSpec> members;
    for (const auto& raw : specs) {
        MemberSpec spec;
        std::string method;
        int k = 0, reps = 1;
        const auto c1 = raw.find(':');
        if (c1 == std::string::npos) throw DomainError("member spec must be method:k[:reps]");
        method = raw.substr(0, c1);
        const auto c2 = raw.find(':', c1 + 1);
        k = std::atoi(raw.substr(c1 + 1, c2 - c1 - 1).c_str());
        if (c2 != std::string::npos) reps = std::atoi(raw.substr(c2 + 1).c_str());
        if (method == "nmf") spec.method = EnsembleMethod::nmf;
        else if (method == "kmeans") spec.method = EnsembleMethod::kmeans;
        else throw DomainError("unknown ensemble method: " + method);
        if (k < 2) throw DomainError("member k must be >= 2");
        if (reps < 1) throw DomainError("member reps must be >= 1");
        spec.k = k;
        spec.reps = reps;
        members.push_back(spec);
    }
    return members;
}

KnnMetric parse_metric(const std::string& name) {
    return name == "cosine" ? KnnMetric::cosine : KnnMetric::euclidean;
}

KnnMode parse_mode(const std::string& name) {
    if (name == "union") return KnnMode::union_size;
    if (name == "mutual") return KnnMode::mutual;
    return KnnMode::intersection;
}

DataMatrix load_input(const std::string& builtin, const std::string& input,
                      const CsvFlags& csv, std::optional<ClusteringResult>* truth) {
    if (builtin == "baseball") return datasets::baseball_data();
    if (!builtin.empty()) throw DomainError("unknown builtin dataset: " + builtin);
    if (input.empty()) throw DomainError("need --input or --builtin");
    LoadedData loaded = load_data(input, csv.to_options());
    if (truth) *truth = loaded.truth;
    return std::move(loaded.data);
}

ConsensusMatrix read_consensus_flexible(const std::string& path) {
    try {
        return read_consensus(path);
    } catch (const ParseError&) {
        ConsensusMatrix S;
        S.S = read_matrix(path);
        S.r = 1;
        return S;
    }
}

void print_clusters(const ClusteringResult& clusters, std::ostream& out) {
    out << "index,label\n";
    for (std::size_t i = 0; i < clusters.labels.size(); ++i)
        out << (i + 1) << ',' << clusters.labels[i] << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic consensus clustering toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::string out;
    double tol = -1.0;
    app.add_option("--seed", seed, "seed base for every stochastic stage");
    app.add_option("--out", out, "output file or directory");
    app.add_option("--tol", tol, "override the stage tolerance");

    int exit_code = kExitOk;
    std::function<void()> action;

    // ---- ensemble -------------------------------------------------------
    auto* cmd_ensemble = app.add_subcommand("ensemble", "generate ensemble clusterings");
    {
        static std::string input, builtin;
        static CsvFlags csv;
        static std::vector<std::string> member_specs;
        cmd_ensemble->add_option("--input", input, "CSV data file");
        cmd_ensemble->add_option("--builtin", builtin, "builtin dataset name");
        csv.attach(cmd_ensemble);
        cmd_ensemble->add_option("--member", member_specs, "method:k[:reps], repeatable")
            ->required();
        cmd_ensemble->callback([&, cmd_ensemble] {
            action = [&] {
                auto data = load_input(builtin, input, csv, nullptr);
                auto ensemble = generate_ensemble(data, parse_members(member_specs), seed);
                if (out.empty()) throw DomainError("ensemble needs --out FILE");
                write_ensemble(ensemble, out);
                std::cout << "wrote " << ensemble.size() << " members to " << out << "\n";
            };
        });
    }

    // ---- consensus ------------------------------------------------------
    auto* cmd_consensus = app.add_subcommand("consensus", "sum an ensemble into a consensus matrix");
    {
        static std::string ensemble_file;
        cmd_consensus->add_option("--ensemble", ensemble_file, "ensemble file")->required();
        cmd_consensus->callback([&] {
            action = [&] {
                auto ensemble = read_ensemble(ensemble_file);
                auto S = consensus_sum(ensemble);
                if (out.empty()) throw DomainError("consensus needs --out FILE");
                write_consensus(S, out);
                std::cout << "wrote order-" << S.order() << " consensus (r=" << S.r << ") to "
                          << out << "\n";
            };
        });
    }

    // ---- knn-consensus --------------------------------------------------
    auto* cmd_knn = app.add_subcommand("knn-consensus", "nearest-neighbor single-measure consensus");
    {
        static std::string input, builtin, metric = "euclidean", mode = "intersection";
        static CsvFlags csv;
        static int kappa = 0;
        cmd_knn->add_option("--input", input, "CSV data file");
        cmd_knn->add_option("--builtin", builtin, "builtin dataset name");
        csv.attach(cmd_knn);
        cmd_knn->add_option("--kappa", kappa, "neighborhood size")->required();
        cmd_knn->add_option("--metric", metric, "euclidean|cosine")
            ->check(CLI::IsMember({"euclidean", "cosine"}));
        cmd_knn->add_option("--mode", mode, "intersection|union|mutual")
            ->check(CLI::IsMember({"intersection", "union", "mutual"}));
        cmd_knn->callback([&] {
            action = [&] {
                auto data = load_input(builtin, input, csv, nullptr);
                auto S = knn_consensus(data, kappa, parse_metric(metric), parse_mode(mode));
                const auto isolated = isolated_indices(S.S);
                if (!isolated.empty()) {
                    std::cerr << "warning: " << isolated.size()
                              << " isolated element(s) (zero off-diagonal rows):";
                    for (auto i : isolated) std::cerr << ' ' << (i + 1);
                    std::cerr << "\n";
                }
                if (out.empty()) throw DomainError("knn-consensus needs --out FILE");
                write_consensus(S, out);
                std::cout << "wrote order-" << S.order() << " knn consensus to " << out << "\n";
            };
        });
    }

    // ---- balance --------------------------------------------------------
    auto* cmd_balance = app.add_subcommand("balance", "scale a consensus to doubly stochastic form");
    {
        static std::string input;
        static int max_iter = 10000;
        static bool allow_uncoupled = false;
        cmd_balance->add_option("--input", input, "consensus or matrix file")->required();
        cmd_balance->add_option("--max-iter", max_iter, "iteration cap");
        cmd_balance->add_flag("--allow-uncoupled", allow_uncoupled,
                              "accept componentwise-balanceable uncoupled input");
        cmd_balance->callback([&] {
            action = [&] {
                auto S = read_consensus_flexible(input);
                const auto diag = check_support(S);
                std::cout << "irreducible=" << diag.irreducible
                          << " positive_diagonal=" << diag.positive_diagonal
                          << " fully_indecomposable=" << diag.fully_indecomposable
                          << " components=" << diag.component_count << "\n";
                if (!diag.isolated.empty()) {
                    std::cout << "isolated:";
                    for (auto i : diag.isolated) std::cout << ' ' << (i + 1);
                    std::cout << "\n";
                }
                BalanceOptions opts;
                if (tol > 0) opts.tol = tol;
                opts.max_iter = max_iter;
                opts.allow_uncoupled = allow_uncoupled;
                auto B = sinkhorn_knopp(S, opts);
                std::cout << "iterations=" << B.iterations << " residual=" << B.residual << "\n";
                const fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
                fs::create_directories(dir);
                write_matrix(B.P, dir / "P.txt");
                write_vector(B.d, dir / "d.txt");
                std::cout << "wrote " << (dir / "P.txt").string() << " and "
                          << (dir / "d.txt").string() << "\n";
            };
        });
    }

    // ---- eigen ----------------------------------------------------------
    auto* cmd_eigen = app.add_subcommand("eigen", "spectrum and Perron cluster of a matrix");
    {
        static std::string input;
        cmd_eigen->add_option("--input", input, "matrix file")->required();
        cmd_eigen->callback([&] {
            action = [&] {
                auto M = read_matrix(input);
                EigenOptions opts;
                if (tol > 0) opts.tol = tol;
                opts.want_vectors = false;
                auto spec = sym_eigen(M, opts);
                auto cluster = perron_cluster(spec);
                std::cout << "eigenvalues";
                for (double ev : spec.eigenvalues) std::cout << ' ' << ev;
                std::cout << "\nperron_k=" << cluster.k << " gap=" << cluster.gap << "\n";
                if (!out.empty()) write_vector(spec.eigenvalues, out);
            };
        });
    }

    // ---- sca / run ------------------------------------------------------
    auto* cmd_run = app.add_subcommand("run", "stochastic clustering of a consensus file");
    cmd_run->alias("sca");
    {
        static std::string consensus_file;
        static int k = 0, stability = 6, max_iter = 1000, restarts = 1;
        static bool allow_uncoupled = false;
        static bool trace = false;
        cmd_run->add_option("--consensus", consensus_file, "consensus matrix file")->required();
        cmd_run->add_option("--k", k, "override the detected cluster count");
        cmd_run->add_option("--stability", stability, "identical clusterings required to stop");
        cmd_run->add_option("--max-iter", max_iter, "evolution step cap");
        cmd_run->add_option("--restarts", restarts, "independent runs; the modal clustering wins");
        cmd_run->add_flag("--allow-uncoupled", allow_uncoupled,
                          "accept componentwise-balanceable uncoupled input");
        cmd_run->add_flag("--trace", trace, "dump per-iteration trace (restarts == 1 only)");
        cmd_run->callback([&] {
            action = [&] {
                auto S = read_consensus_flexible(consensus_file);
                PipelineConfig cfg;
                cfg.seed_base = seed;
                cfg.sca_seed = seed;
                cfg.restarts = restarts;
                cfg.allow_uncoupled = allow_uncoupled;
                if (tol > 0) cfg.balance_tol = tol;
                cfg.sca.stability_count = stability;
                cfg.sca.max_iter = max_iter;
                cfg.sca.record_trace = trace;
                if (k > 0) cfg.sca.k_override = k;
                if (!out.empty()) {
                    fs::create_directories(out);
                    cfg.out_dir = out;
                }
                auto report = run_from_consensus(S, cfg);
                std::cout << report_to_text(report);
                if (out.empty()) print_clusters(report.final_clusters, std::cout);
            };
        });
    }

    // ---- custom ---------------------------------------------------------
    auto* cmd_custom = app.add_subcommand("custom", "custom cluster around one element");
    {
        static std::string consensus_file;
        static int target = 0, min_size = 1, max_size = 0, max_iter = 1000, closest_m = 0, k = 0;
        static bool allow_uncoupled = false;
        cmd_custom->add_option("--consensus", consensus_file, "consensus matrix file")->required();
        cmd_custom->add_option("--target", target, "1-based element index")->required();
        cmd_custom->add_option("--min", min_size, "minimum cluster size");
        cmd_custom->add_option("--max", max_size, "maximum cluster size")->required();
        cmd_custom->add_option("--max-iter", max_iter, "evolution step cap");
        cmd_custom->add_option("--closest-m", closest_m,
                               "return the m entries nearest the target instead");
        cmd_custom->add_option("--k", k, "override the detected cluster count");
        cmd_custom->add_flag("--allow-uncoupled", allow_uncoupled,
                             "accept componentwise-balanceable uncoupled input");
        cmd_custom->callback([&] {
            action = [&] {
                auto S = read_consensus_flexible(consensus_file);
                BalanceOptions bopts;
                if (tol > 0) bopts.tol = tol;
                bopts.allow_uncoupled = allow_uncoupled;
                auto B = sinkhorn_knopp(S, bopts);
                CCAOptions opts;
                if (target < 1 || static_cast<std::size_t>(target) > S.order())
                    throw DomainError("--target out of range");
                opts.target = static_cast<std::size_t>(target - 1);
                opts.min_size = static_cast<std::size_t>(min_size);
                opts.max_size = static_cast<std::size_t>(max_size);
                opts.max_iter = max_iter;
                if (closest_m > 0) opts.closest_m = closest_m;
                if (k > 0) opts.k_override = k;
                auto result = run_cca(B, opts);
                std::cout << "t=" << result.t_found << " k=" << result.k_used << "\nmembers";
                for (auto i : result.members) std::cout << ' ' << (i + 1);
                std::cout << "\n";
            };
        });
    }

    // ---- pipeline -------------------------------------------------------
    auto* cmd_pipeline = app.add_subcommand("pipeline", "data -> ensemble -> consensus -> clusters");
    {
        static std::string input, builtin, metric = "euclidean", mode = "intersection";
        static CsvFlags csv;
        static std::vector<std::string> member_specs;
        static int kappa = 0, k = 0, stability = 6, max_iter = 1000, restarts = 1;
        static bool allow_uncoupled = false;
        cmd_pipeline->add_option("--input", input, "CSV data file");
        cmd_pipeline->add_option("--builtin", builtin, "builtin dataset name");
        csv.attach(cmd_pipeline);
        cmd_pipeline->add_option("--member", member_specs, "method:k[:reps], repeatable");
        cmd_pipeline->add_option("--kappa", kappa, "use knn consensus with this neighborhood size");
        cmd_pipeline->add_option("--metric", metric, "euclidean|cosine")
            ->check(CLI::IsMember({"euclidean", "cosine"}));
        cmd_pipeline->add_option("--mode", mode, "intersection|union|mutual")
            ->check(CLI::IsMember({"intersection", "union", "mutual"}));
        cmd_pipeline->add_option("--k", k, "override the detected cluster count");
        cmd_pipeline->add_option("--stability", stability, "identical clusterings required to stop");
        cmd_pipeline->add_option("--max-iter", max_iter, "evolution step cap");
        cmd_pipeline->add_option("--restarts", restarts, "independent runs; modal clustering wins");
        cmd_pipeline->add_flag("--allow-uncoupled", allow_uncoupled,
                               "accept componentwise-balanceable uncoupled input");
        cmd_pipeline->callback([&] {
            action = [&] {
                PipelineConfig cfg;
                if (!input.empty()) cfg.input = input;
                cfg.builtin = builtin;
                cfg.csv = csv.to_options();
                if (!member_specs.empty()) cfg.members = parse_members(member_specs);
                if (kappa > 0) {
                    cfg.kappa = kappa;
                    cfg.metric = parse_metric(metric);
                    cfg.mode = parse_mode(mode);
                }
                cfg.seed_base = seed;
                cfg.restarts = restarts;
                cfg.allow_uncoupled = allow_uncoupled;
                if (tol > 0) cfg.balance_tol = tol;
                cfg.sca.stability_count = stability;
                cfg.sca.max_iter = max_iter;
                if (k > 0) cfg.sca.k_override = k;
                if (!out.empty()) {
                    fs::create_directories(out);
                    cfg.out_dir = out;
                }
                auto report = run_pipeline(cfg);
                std::cout << report_to_text(report, builtin == "baseball"
                                                        ? datasets::baseball_names()
                                                        : std::vector<std::string>{});
            };
        });
    }

    // ---- check ----------------------------------------------------------
    auto* cmd_check = app.add_subcommand("check", "run the matrix-theory verification suites");
    {
        cmd_check->callback([&] {
            action = [&] {
                const auto suites = verify::run_all_suites(seed);
                bool all_pass = true;
                std::string csv_rows = "suite,trials,failures,worst\n";
                for (const auto& suite : suites) {
                    std::cout << "suite=" << suite.name << " trials=" << suite.trials
                              << " failures=" << suite.failures
                              << " pass=" << (suite.pass() ? "yes" : "no");
                    for (const auto& line : suite.lines) std::cout << ' ' << line;
                    std::cout << "\n";
                    csv_rows += suite.name + "," + std::to_string(suite.trials) + "," +
                                std::to_string(suite.failures) + "," + std::to_string(suite.worst) +
                                "\n";
                    all_pass = all_pass && suite.pass();
                }
                if (!out.empty()) {
                    std::ofstream f(out);
                    f << csv_rows;
                }
                if (!all_pass) throw ExhaustionError("verification suite failed");
            };
        });
    }

    // ---- hist -----------------------------------------------------------
    auto* cmd_hist = app.add_subcommand("hist", "histogram of the upper-triangle values");
    {
        static std::string input;
        static int bins = 20;
        cmd_hist->add_option("--input", input, "matrix file")->required();
        cmd_hist->add_option("--bins", bins, "bin count");
        cmd_hist->callback([&] {
            action = [&] {
                auto M = read_matrix(input);
                auto values = upper_triangle_values(M);
                if (out.empty()) throw DomainError("hist needs --out FILE");
                export_histogram(values, bins, out);
                std::cout << "wrote " << values.size() << " values in " << bins << " bins to "
                          << out << "\n";
            };
        });
    }

    try {
        app.parse(argc, argv);
        if (action) action();
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SupportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const DegeneratePartitionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const SingularMatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const ExhaustionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitExhaustion;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
