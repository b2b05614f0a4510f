#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sca/balance.hpp"
#include "sca/consensus.hpp"
#include "sca/ensemble.hpp"
#include "sca/matrix.hpp"

namespace sca {

/// Matrix exchange format: first line "n", then n lines of n
/// space-separated values at 17 significant digits. Consensus files put
/// a "# key=value ..." metadata comment before the order line.
void write_matrix(const SymMatrix& M, const std::filesystem::path& path);
SymMatrix read_matrix(const std::filesystem::path& path);

void write_consensus(const ConsensusMatrix& S, const std::filesystem::path& path);
ConsensusMatrix read_consensus(const std::filesystem::path& path);

void write_vector(const std::vector<double>& v, const std::filesystem::path& path);
std::vector<double> read_vector(const std::filesystem::path& path);

enum class CsvOrientation { elements_in_rows, attributes_in_rows };

struct CsvOptions {
    CsvOrientation orientation = CsvOrientation::elements_in_rows;
    bool has_header = true;
    /// Column to split out as ground-truth labels: a header name, or a
    /// 1-based column index when numeric.
    std::optional<std::string> label_column;
};

struct LoadedData {
    DataMatrix data;
    std::optional<ClusteringResult> truth;
    std::vector<std::string> label_names;  // distinct labels, id order
};

/// CSV ingestion; parse failures name the 1-based row/column.
LoadedData load_data(const std::filesystem::path& path, const CsvOptions& options = {});

/// Ensemble exchange: one line per member, "method k seed label_1 ... label_n".
void write_ensemble(const std::vector<ClusteringResult>& ensemble,
                    const std::filesystem::path& path);
std::vector<ClusteringResult> read_ensemble(const std::filesystem::path& path);

struct HistogramBin {
    double lo = 0.0, hi = 0.0;
    std::size_t count = 0;
};

/// Equal-width bins over [min, max]; the top edge is inclusive. Constant
/// input collapses to a single occupied bin.
std::vector<HistogramBin> make_histogram(const std::vector<double>& values, int bins);
void export_histogram(const std::vector<double>& values, int bins,
                      const std::filesystem::path& path);

/// Entries above the diagonal (i < j), row-major order.
std::vector<double> upper_triangle_values(const SymMatrix& M);

}  // namespace sca
