#include "fcsim/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <system_error>
#include <type_traits>

#include "fcsim/error.hpp"

namespace fcsim {

namespace {

constexpr const char* kNa = "NA";

// Reads lines, tracking numbers and skipping blanks and '#' comments.
class LineReader {
public:
    LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    std::optional<std::string> next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_number_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            if (line[first] == '#') continue;
            return line;
        }
        return std::nullopt;
    }

    std::string required(const std::string& what) {
        auto line = next();
        if (!line) throw ParseError(source_, line_number_, "expected " + what + ", got end of file");
        return *line;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(source_, line_number_, msg);
    }

    long line_number() const noexcept { return line_number_; }
    const std::string& source() const noexcept { return source_; }

private:
    std::istream& in_;
    std::string source_;
    long line_number_ = 0;
};

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream stream(line);
    std::string token;
    while (stream >> token) tokens.push_back(token);
    return tokens;
}

double parse_double(const LineReader& reader, const std::string& token) {
    double value = 0.0;
    const auto* begin = token.data();
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(reader.source(), reader.line_number(), "bad number '" + token + "'");
    return value;
}

long long parse_int(const LineReader& reader, const std::string& token) {
    long long value = 0;
    const auto* begin = token.data();
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(reader.source(), reader.line_number(), "bad integer '" + token + "'");
    return value;
}

std::uint64_t parse_u64(const LineReader& reader, const std::string& token) {
    std::uint64_t value = 0;
    const auto* begin = token.data();
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(reader.source(), reader.line_number(),
                         "bad unsigned integer '" + token + "'");
    return value;
}

std::optional<double> parse_optional_double(const LineReader& reader, const std::string& token) {
    if (token == kNa) return std::nullopt;
    return parse_double(reader, token);
}

std::string format_optional(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string(kNa);
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc()) throw NumericError("double formatting failed");
    return std::string(buffer, ptr);
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("write_matrix needs a square matrix");
    out << m.rows() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Eigen::MatrixXd read_matrix(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    const auto header = split_tokens(reader.required("matrix header 'n'"));
    if (header.size() != 1) reader.fail("matrix header must be a single integer");
    const long long n = parse_int(reader, header[0]);
    if (n < 1) reader.fail("matrix size must be positive");

    Eigen::MatrixXd m(n, n);
    for (long long i = 0; i < n; ++i) {
        const auto tokens = split_tokens(reader.required("matrix row"));
        if (static_cast<long long>(tokens.size()) != n)
            reader.fail("expected " + std::to_string(n) + " values, got " +
                        std::to_string(tokens.size()));
        for (long long j = 0; j < n; ++j)
            m(i, j) = parse_double(reader, tokens[static_cast<std::size_t>(j)]);
    }
    return m;
}

void write_time_series(std::ostream& out, const TimeSeriesSample& ts) {
    out << ts.n << ' ' << ts.t_len << '\n';
    for (int i = 0; i < ts.n; ++i) {
        for (int t = 0; t < ts.t_len; ++t) {
            if (t > 0) out << ' ';
            out << format_double(ts.values(i, t));
        }
        out << '\n';
    }
}

TimeSeriesSample read_time_series(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    const auto header = split_tokens(reader.required("time series header 'n t_len'"));
    if (header.size() != 2) reader.fail("time series header must be two integers");
    const long long n = parse_int(reader, header[0]);
    const long long t_len = parse_int(reader, header[1]);
    if (n < 1 || t_len < 1) reader.fail("time series dimensions must be positive");

    TimeSeriesSample ts;
    ts.n = static_cast<int>(n);
    ts.t_len = static_cast<int>(t_len);
    ts.values.resize(n, t_len);
    for (long long i = 0; i < n; ++i) {
        const auto tokens = split_tokens(reader.required("time series row"));
        if (static_cast<long long>(tokens.size()) != t_len)
            reader.fail("expected " + std::to_string(t_len) + " values, got " +
                        std::to_string(tokens.size()));
        for (long long t = 0; t < t_len; ++t)
            ts.values(i, t) = parse_double(reader, tokens[static_cast<std::size_t>(t)]);
    }
    return ts;
}

void write_edge_list(std::ostream& out, const BinaryGraph& g) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

BinaryGraph read_edge_list(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    const auto header = split_tokens(reader.required("edge list header 'n m'"));
    if (header.size() != 2) reader.fail("edge list header must be two integers");
    const long long n = parse_int(reader, header[0]);
    const long long m = parse_int(reader, header[1]);
    if (n < 1 || m < 0) reader.fail("bad edge list dimensions");

    BinaryGraph g(static_cast<int>(n));
    for (long long e = 0; e < m; ++e) {
        const auto tokens = split_tokens(reader.required("edge"));
        if (tokens.size() != 2) reader.fail("edge lines must hold two indices");
        const long long i = parse_int(reader, tokens[0]);
        const long long j = parse_int(reader, tokens[1]);
        if (i < 0 || j < 0 || i >= n || j >= n || i >= j)
            reader.fail("edge must satisfy 0 <= i < j < n");
        try {
            g.add_edge(static_cast<int>(i), static_cast<int>(j));
        } catch (const InvalidArgument& err) {
            reader.fail(err.what());
        }
    }
    return g;
}

namespace {

GraphOrMatrix read_graph_or_matrix_impl(std::istream& in, const std::string& source) {
    // Peek at the first content line: one token means a matrix, two an edge list.
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    std::istringstream probe(content);
    LineReader reader(probe, source);
    const auto header_line = reader.next();
    if (!header_line) throw ParseError(source, 0, "empty input");
    const auto header = split_tokens(*header_line);

    GraphOrMatrix result;
    if (header.size() == 2) {
        std::istringstream stream(content);
        result.graph = read_edge_list(stream, source);
        return result;
    }
    if (header.size() != 1) throw ParseError(source, reader.line_number(), "unrecognized header");

    std::istringstream stream(content);
    const Eigen::MatrixXd m = read_matrix(stream, source);

    bool binary = true;
    for (Eigen::Index i = 0; i < m.rows() && binary; ++i)
        for (Eigen::Index j = 0; j < m.cols() && binary; ++j)
            if (m(i, j) != 0.0 && m(i, j) != 1.0) binary = false;

    if (binary) {
        const double asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
        if (asymmetry != 0.0) throw ParseError(source, 0, "adjacency matrix is not symmetric");
        BinaryGraph g(static_cast<int>(m.rows()));
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (m(i, i) != 0.0) throw ParseError(source, 0, "adjacency matrix has a self-loop");
            for (Eigen::Index j = i + 1; j < m.cols(); ++j)
                if (m(i, j) == 1.0) g.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
        result.graph = std::move(g);
    } else {
        CorrelationMatrix c;
        c.n = static_cast<int>(m.rows());
        c.entries = m;
        result.matrix = std::move(c);
    }
    return result;
}

}  // namespace

GraphOrMatrix read_graph_or_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_graph_or_matrix_impl(in, path);
}

namespace {

bool parse_bool(const LineReader& reader, const std::string& token) {
    if (token == "true" || token == "1") return true;
    if (token == "false" || token == "0") return false;
    throw ParseError(reader.source(), reader.line_number(), "bad boolean '" + token + "'");
}

}  // namespace

SweepConfig read_sweep_config(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    SweepConfig config;
    bool have_mode_finite = false;
    std::optional<int> t_len;
    std::optional<int> burn_in;

    for (auto line = reader.next(); line; line = reader.next()) {
        const auto eq = line->find('=');
        if (eq == std::string::npos) reader.fail("expected 'key = value'");
        std::string key = line->substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        const auto values = split_tokens(line->substr(eq + 1));
        if (values.empty()) reader.fail("key '" + key + "' has no value");
        const std::string& first = values.front();

        auto int_list = [&] {
            std::vector<int> out;
            for (const auto& v : values) out.push_back(static_cast<int>(parse_int(reader, v)));
            return out;
        };
        auto double_list = [&] {
            std::vector<double> out;
            for (const auto& v : values) out.push_back(parse_double(reader, v));
            return out;
        };
        auto single = [&]() -> const std::string& {
            if (values.size() != 1) reader.fail("key '" + key + "' expects a single value");
            return first;
        };

        try {
            if (key == "n_values") config.n_values = int_list();
            else if (key == "s_values") config.s_values = double_list();
            else if (key == "alpha_values") config.alpha_values = double_list();
            else if (key == "p_sc_values") config.p_sc_values = double_list();
            else if (key == "p_fc_values") config.p_fc_values = double_list();
            else if (key == "realizations") config.realizations = static_cast<int>(parse_int(reader, single()));
            else if (key == "mode") {
                const std::string& mode = single();
                if (mode == "finite") have_mode_finite = true;
                else if (mode == "asymptotic") have_mode_finite = false;
                else reader.fail("mode must be asymptotic or finite");
            } else if (key == "t_len") t_len = static_cast<int>(parse_int(reader, single()));
            else if (key == "burn_in") burn_in = static_cast<int>(parse_int(reader, single()));
            else if (key == "null_model") config.null_model = null_model_from_string(single());
            else if (key == "er_style") config.er_style = er_null_style_from_string(single());
            else if (key == "null_realizations") config.null_realizations = static_cast<int>(parse_int(reader, single()));
            else if (key == "swap_factor") config.swap_factor = parse_double(reader, single());
            else if (key == "sc_weights") config.sc_weights = sc_weights_from_string(single());
            else if (key == "threshold") {
                const std::string& mode = single();
                if (mode == "signed") config.threshold_mode = ThresholdMode::Signed;
                else if (mode == "absolute") config.threshold_mode = ThresholdMode::Absolute;
                else reader.fail("threshold must be signed or absolute");
            } else if (key == "connected_only") config.connected_only = parse_bool(reader, single());
            else if (key == "master_seed") config.master_seed = parse_u64(reader, single());
            else reader.fail("unknown key '" + key + "'");
        } catch (const InvalidArgument& err) {
            reader.fail(err.what());
        }
    }

    if (have_mode_finite) {
        FiniteMode finite;
        if (!t_len) throw ConfigError("t_len: required when mode = finite");
        finite.t_len = *t_len;
        finite.burn_in = burn_in;
        config.finite = finite;
    } else if (t_len || burn_in) {
        throw ConfigError("t_len/burn_in: only meaningful when mode = finite");
    }
    return config;
}

SweepConfig read_sweep_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_sweep_config(in, path);
}

void write_sweep_config(std::ostream& out, const SweepConfig& config) {
    auto list_line = [&out](const char* key, const auto& values) {
        out << key << " =";
        for (const auto& v : values) {
            if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>)
                out << ' ' << format_double(v);
            else
                out << ' ' << v;
        }
        out << '\n';
    };
    list_line("n_values", config.n_values);
    list_line("s_values", config.s_values);
    list_line("alpha_values", config.alpha_values);
    list_line("p_sc_values", config.p_sc_values);
    list_line("p_fc_values", config.p_fc_values);
    out << "realizations = " << config.realizations << '\n';
    out << "mode = " << (config.finite ? "finite" : "asymptotic") << '\n';
    if (config.finite) {
        out << "t_len = " << config.finite->t_len << '\n';
        if (config.finite->burn_in) out << "burn_in = " << *config.finite->burn_in << '\n';
    }
    out << "null_model = " << to_string(config.null_model) << '\n';
    out << "er_style = " << to_string(config.er_style) << '\n';
    out << "null_realizations = " << config.null_realizations << '\n';
    out << "swap_factor = " << format_double(config.swap_factor) << '\n';
    out << "sc_weights = " << to_string(config.sc_weights) << '\n';
    out << "threshold = "
        << (config.threshold_mode == ThresholdMode::Signed ? "signed" : "absolute") << '\n';
    out << "connected_only = " << (config.connected_only ? "true" : "false") << '\n';
    out << "master_seed = " << config.master_seed << '\n';
}

// Results table column order (tab-separated, fixed, documented in README):
//   row_type n s alpha p_sc p_fc realization gamma lambda sigma
//   n_components connected degenerate fc_empty null_partial
//   sc_seed series_seed tie_seed null_seed
//   count_connected count_gamma count_lambda count_sigma count_sigma_gt_1
//   gamma_mean gamma_median gamma_std lambda_mean lambda_median lambda_std
//   sigma_mean sigma_median sigma_std sign_n_above sign_n_below sign_test_p t_test_p
// Realization rows fill the first block and put NA in the aggregate block;
// 'cell' rows do the reverse.
namespace {

constexpr int kTableColumns = 37;

void write_params(std::ostream& out, const CellParams& p) {
    out << p.n << '\t' << format_double(p.s) << '\t' << format_double(p.alpha) << '\t'
        << format_double(p.p_sc) << '\t' << format_double(p.p_fc);
}

}  // namespace

void write_results_table(std::ostream& out, const std::vector<CellResult>& results) {
    out << "# row_type n s alpha p_sc p_fc realization gamma lambda sigma"
           " n_components connected degenerate fc_empty null_partial"
           " sc_seed series_seed tie_seed null_seed"
           " count_connected count_gamma count_lambda count_sigma count_sigma_gt_1"
           " gamma_mean gamma_median gamma_std lambda_mean lambda_median lambda_std"
           " sigma_mean sigma_median sigma_std sign_n_above sign_n_below sign_test_p t_test_p\n";
    for (const CellResult& cell : results) {
        for (const RealizationRecord& rec : cell.records) {
            out << "realization\t";
            write_params(out, rec.params);
            out << '\t' << rec.realization << '\t' << format_optional(rec.gamma) << '\t'
                << format_optional(rec.lambda) << '\t' << format_optional(rec.sigma) << '\t'
                << rec.n_components << '\t' << (rec.connected ? 1 : 0) << '\t'
                << (rec.degenerate ? 1 : 0) << '\t' << (rec.fc_empty ? 1 : 0) << '\t'
                << (rec.null_partial ? 1 : 0) << '\t' << rec.sc_seed << '\t' << rec.series_seed
                << '\t' << rec.tie_seed << '\t' << rec.null_seed;
            for (int i = 0; i < 18; ++i) out << '\t' << kNa;
            out << '\n';
        }
        out << "cell\t";
        write_params(out, cell.params);
        out << "\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA\tNA";
        out << '\t' << cell.count_connected << '\t' << cell.gamma.count << '\t'
            << cell.lambda.count << '\t' << cell.sigma.count << '\t' << cell.count_sigma_gt_1
            << '\t' << format_optional(cell.gamma.mean) << '\t'
            << format_optional(cell.gamma.median) << '\t' << format_optional(cell.gamma.stddev)
            << '\t' << format_optional(cell.lambda.mean) << '\t'
            << format_optional(cell.lambda.median) << '\t'
            << format_optional(cell.lambda.stddev) << '\t' << format_optional(cell.sigma.mean)
            << '\t' << format_optional(cell.sigma.median) << '\t'
            << format_optional(cell.sigma.stddev) << '\t' << cell.sign_test.n_above << '\t'
            << cell.sign_test.n_below << '\t' << format_optional(cell.sign_test.p) << '\t'
            << format_optional(cell.t_test_p) << '\n';
    }
}

std::string results_table_to_string(const std::vector<CellResult>& results) {
    std::ostringstream out;
    write_results_table(out, results);
    return out.str();
}

std::vector<CellResult> read_results_table(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    std::vector<CellResult> results;
    CellResult current;
    bool have_records = false;

    auto params_of = [&](const std::vector<std::string>& t) {
        CellParams p;
        p.n = static_cast<int>(parse_int(reader, t[1]));
        p.s = parse_double(reader, t[2]);
        p.alpha = parse_double(reader, t[3]);
        p.p_sc = parse_double(reader, t[4]);
        p.p_fc = parse_double(reader, t[5]);
        return p;
    };

    for (auto line = reader.next(); line; line = reader.next()) {
        const auto tokens = split_tokens(*line);
        if (tokens.size() != kTableColumns)
            reader.fail("expected " + std::to_string(kTableColumns) + " columns, got " +
                        std::to_string(tokens.size()));
        if (tokens[0] == "realization") {
            RealizationRecord rec;
            rec.params = params_of(tokens);
            rec.realization = static_cast<int>(parse_int(reader, tokens[6]));
            rec.gamma = parse_optional_double(reader, tokens[7]);
            rec.lambda = parse_optional_double(reader, tokens[8]);
            rec.sigma = parse_optional_double(reader, tokens[9]);
            rec.n_components = static_cast<int>(parse_int(reader, tokens[10]));
            rec.connected = parse_int(reader, tokens[11]) != 0;
            rec.degenerate = parse_int(reader, tokens[12]) != 0;
            rec.fc_empty = parse_int(reader, tokens[13]) != 0;
            rec.null_partial = parse_int(reader, tokens[14]) != 0;
            rec.sc_seed = parse_u64(reader, tokens[15]);
            rec.series_seed = parse_u64(reader, tokens[16]);
            rec.tie_seed = parse_u64(reader, tokens[17]);
            rec.null_seed = parse_u64(reader, tokens[18]);
            current.records.push_back(std::move(rec));
            have_records = true;
        } else if (tokens[0] == "cell") {
            current.params = params_of(tokens);
            current.count_connected = static_cast<int>(parse_int(reader, tokens[19]));
            current.gamma.count = static_cast<int>(parse_int(reader, tokens[20]));
            current.lambda.count = static_cast<int>(parse_int(reader, tokens[21]));
            current.sigma.count = static_cast<int>(parse_int(reader, tokens[22]));
            current.count_sigma_gt_1 = static_cast<int>(parse_int(reader, tokens[23]));
            current.gamma.mean = parse_optional_double(reader, tokens[24]);
            current.gamma.median = parse_optional_double(reader, tokens[25]);
            current.gamma.stddev = parse_optional_double(reader, tokens[26]);
            current.lambda.mean = parse_optional_double(reader, tokens[27]);
            current.lambda.median = parse_optional_double(reader, tokens[28]);
            current.lambda.stddev = parse_optional_double(reader, tokens[29]);
            current.sigma.mean = parse_optional_double(reader, tokens[30]);
            current.sigma.median = parse_optional_double(reader, tokens[31]);
            current.sigma.stddev = parse_optional_double(reader, tokens[32]);
            current.sign_test.n_above = static_cast<int>(parse_int(reader, tokens[33]));
            current.sign_test.n_below = static_cast<int>(parse_int(reader, tokens[34]));
            current.sign_test.p = parse_optional_double(reader, tokens[35]);
            current.t_test_p = parse_optional_double(reader, tokens[36]);
            results.push_back(std::move(current));
            current = CellResult{};
            have_records = false;
        } else {
            reader.fail("unknown row type '" + tokens[0] + "'");
        }
    }
    if (have_records) reader.fail("trailing realization rows without a cell row");
    return results;
}

std::vector<CellResult> read_results_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_results_table(in, path);
}

void write_heatmap(std::ostream& grid_out, std::ostream& axes_out, const HeatmapGrid& grid) {
    for (const auto& row : grid.values) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) grid_out << '\t';
            grid_out << format_optional(row[c]);
        }
        grid_out << '\n';
    }
    axes_out << "p_sc";
    for (double v : grid.p_sc_axis) axes_out << '\t' << format_double(v);
    axes_out << '\n' << "p_fc";
    for (double v : grid.p_fc_axis) axes_out << '\t' << format_double(v);
    axes_out << '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace fcsim
