#include "sca/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "sca/errors.hpp"

namespace sca {
namespace {

std::string format17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& token, std::size_t line, std::size_t column) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError("cannot parse '" + token + "' as a number at line " +
                             std::to_string(line) + ", column " + std::to_string(column),
                         line, column);
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

void write_matrix_body(std::ofstream& out, const SymMatrix& M) {
    const std::size_t n = M.order();
    out << n << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = M.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out << ' ';
            out << format17(row[j]);
        }
        out << "\n";
    }
}

SymMatrix read_matrix_body(std::ifstream& in, std::size_t& line_no,
                           std::map<std::string, std::string>* metadata) {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (metadata) {
                std::istringstream meta(line.substr(1));
                std::string pair;
                while (meta >> pair) {
                    const auto eq = pair.find('=');
                    if (eq != std::string::npos)
                        (*metadata)[pair.substr(0, eq)] = pair.substr(eq + 1);
                }
            }
            continue;
        }
        n = static_cast<std::size_t>(parse_double(line, line_no, 1));
        break;
    }
    if (n == 0) throw ParseError("missing matrix order line", line_no);
    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw ParseError("unexpected end of matrix", line_no + 1);
        ++line_no;
        std::istringstream row(line);
        std::string token;
        std::size_t col = 0;
        while (row >> token) values.push_back(parse_double(token, line_no, ++col));
        if (col != n)
            throw ParseError("expected " + std::to_string(n) + " values, found " +
                                 std::to_string(col) + " at line " + std::to_string(line_no),
                             line_no, col);
    }
    return SymMatrix::from_rows(n, std::move(values));
}

}  // namespace

void write_matrix(const SymMatrix& M, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_matrix_body(out, M);
}

SymMatrix read_matrix(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::size_t line_no = 0;
    return read_matrix_body(in, line_no, nullptr);
}

void write_consensus(const ConsensusMatrix& S, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "# kind=" << to_string(S.kind) << " r=" << S.r;
    if (S.kind == ConsensusKind::knn)
        out << " kappa=" << S.kappa << " metric=" << to_string(S.metric)
            << " mode=" << to_string(S.mode);
    out << "\n";
    write_matrix_body(out, S.S);
}

ConsensusMatrix read_consensus(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::size_t line_no = 0;
    std::map<std::string, std::string> meta;
    ConsensusMatrix S;
    S.S = read_matrix_body(in, line_no, &meta);
    if (auto it = meta.find("kind"); it != meta.end()) {
        if (it->second == "knn") S.kind = ConsensusKind::knn;
        else if (it->second == "combined") S.kind = ConsensusKind::combined;
        else S.kind = ConsensusKind::ensemble_sum;
    }
    if (auto it = meta.find("r"); it != meta.end()) S.r = std::atoi(it->second.c_str());
    if (auto it = meta.find("kappa"); it != meta.end()) S.kappa = std::atoi(it->second.c_str());
    if (auto it = meta.find("metric"); it != meta.end())
        S.metric = it->second == "cosine" ? KnnMetric::cosine : KnnMetric::euclidean;
    if (auto it = meta.find("mode"); it != meta.end()) {
        if (it->second == "union") S.mode = KnnMode::union_size;
        else if (it->second == "mutual") S.mode = KnnMode::mutual;
        else S.mode = KnnMode::intersection;
    }
    if (S.r == 0) throw ParseError("consensus file is missing r metadata");
    return S;
}

void write_vector(const std::vector<double>& v, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << v.size() << "\n";
    for (std::size_t i = 0; i < v.size(); ++i) out << format17(v[i]) << "\n";
}

std::vector<double> read_vector(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty vector file", 1);
    const auto n = static_cast<std::size_t>(parse_double(line, 1, 1));
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw ParseError("unexpected end of vector", i + 2);
        v[i] = parse_double(line, i + 2, 1);
    }
    return v;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    for (auto& f : fields) {
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t");
        f = (b == std::string::npos) ? std::string() : f.substr(b, e - b + 1);
    }
    return fields;
}

}  // namespace

LoadedData load_data(const std::filesystem::path& path, const CsvOptions& options) {
    auto in = open_in(path);
    std::string line;
    std::size_t line_no = 0;

    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (options.has_header && header.empty()) {
            header = std::move(fields);
            continue;
        }
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) throw ParseError("no data rows in " + path.string(), line_no);

    const std::size_t width = rows.front().size();
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].size() != width)
            throw ParseError("ragged row: expected " + std::to_string(width) + " fields, found " +
                                 std::to_string(rows[r].size()) + " at line " +
                                 std::to_string(r + 1 + (options.has_header ? 1 : 0)),
                             r + 1 + (options.has_header ? 1 : 0));

    // resolve the label column, if any
    std::optional<std::size_t> label_idx;
    if (options.label_column) {
        const std::string& want = *options.label_column;
        bool numeric = !want.empty() && want.find_first_not_of("0123456789") == std::string::npos;
        if (numeric) {
            const std::size_t idx = std::strtoull(want.c_str(), nullptr, 10);
            if (idx < 1 || idx > width) throw ParseError("label column index out of range");
            label_idx = idx - 1;
        } else {
            for (std::size_t c = 0; c < header.size(); ++c)
                if (header[c] == want) label_idx = c;
            if (!label_idx) throw ParseError("label column '" + want + "' not found in header");
        }
    }

    LoadedData out;
    std::vector<int> labels;
    std::map<std::string, int> label_ids;
    if (label_idx) {
        labels.reserve(rows.size());
        for (const auto& row : rows) {
            const std::string& tag = row[*label_idx];
            auto [it, inserted] = label_ids.emplace(tag, static_cast<int>(label_ids.size()) + 1);
            if (inserted) out.label_names.push_back(tag);
            labels.push_back(it->second);
        }
    }

    std::vector<std::size_t> value_cols;
    for (std::size_t c = 0; c < width; ++c)
        if (!label_idx || c != *label_idx) value_cols.push_back(c);

    const std::size_t header_offset = options.has_header ? 1 : 0;
    if (options.orientation == CsvOrientation::elements_in_rows) {
        const std::size_t n = rows.size();
        const std::size_t m = value_cols.size();
        DataMatrix A(m, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < m; ++c)
                A.set(c, r,
                      parse_double(rows[r][value_cols[c]], r + 1 + header_offset,
                                   value_cols[c] + 1));
        out.data = std::move(A);
    } else {
        if (label_idx)
            throw ParseError("label column requires elements-in-rows orientation");
        const std::size_t m = rows.size();
        const std::size_t n = value_cols.size();
        DataMatrix A(m, n);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < n; ++c)
                A.set(r, c, parse_double(rows[r][c], r + 1 + header_offset, c + 1));
        out.data = std::move(A);
    }

    if (label_idx) {
        ClusteringResult truth;
        truth.labels = std::move(labels);
        truth.k = static_cast<int>(label_ids.size());
        truth.method = "ground-truth";
        out.truth = std::move(truth);
    }
    return out;
}

void write_ensemble(const std::vector<ClusteringResult>& ensemble,
                    const std::filesystem::path& path) {
    if (ensemble.empty()) throw DomainError("ensemble must be nonempty");
    auto out = open_out(path);
    out << "# ensemble n=" << ensemble.front().size() << " r=" << ensemble.size() << "\n";
    for (const auto& member : ensemble) {
        out << member.method << ' ' << member.k_requested << ' ' << member.seed;
        for (int label : member.labels) out << ' ' << label;
        out << "\n";
    }
}

std::vector<ClusteringResult> read_ensemble(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<ClusteringResult> ensemble;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        ClusteringResult member;
        if (!(row >> member.method >> member.k_requested >> member.seed))
            throw ParseError("bad ensemble member header at line " + std::to_string(line_no),
                             line_no);
        int label;
        while (row >> label) member.labels.push_back(label);
        if (member.labels.empty())
            throw ParseError("ensemble member has no labels at line " + std::to_string(line_no),
                             line_no);
        member.k = *std::max_element(member.labels.begin(), member.labels.end());
        ensemble.push_back(std::move(member));
    }
    if (ensemble.empty()) throw ParseError("no ensemble members in " + path.string());
    return ensemble;
}

std::vector<HistogramBin> make_histogram(const std::vector<double>& values, int bins) {
    if (values.empty()) throw DomainError("histogram needs at least one value");
    if (bins < 1) throw DomainError("histogram needs at least one bin");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    if (lo == hi) {
        return {HistogramBin{lo, hi, values.size()}};
    }
    std::vector<HistogramBin> out(bins);
    const double width = (hi - lo) / bins;
    for (int b = 0; b < bins; ++b) {
        out[b].lo = lo + b * width;
        out[b].hi = (b + 1 == bins) ? hi : lo + (b + 1) * width;
    }
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        if (b >= out.size()) b = out.size() - 1;  // top edge inclusive
        ++out[b].count;
    }
    return out;
}

void export_histogram(const std::vector<double>& values, int bins,
                      const std::filesystem::path& path) {
    const auto hist = make_histogram(values, bins);
    auto out = open_out(path);
    out << "bin_lo,bin_hi,count\n";
    for (const auto& bin : hist)
        out << format17(bin.lo) << ',' << format17(bin.hi) << ',' << bin.count << "\n";
}

std::vector<double> upper_triangle_values(const SymMatrix& M) {
    std::vector<double> out;
    out.reserve(M.order() * (M.order() - 1) / 2);
    for (std::size_t i = 0; i < M.order(); ++i)
        for (std::size_t j = i + 1; j < M.order(); ++j) out.push_back(M(i, j));
    return out;
}

}  // namespace sca
