#include <ghopt/error.hpp>
#include <ghopt/io.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ghopt::io
{

std::string format_real(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string format_fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

namespace
{

std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column)
{
    cell = trim(cell);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": cannot parse '"
                             + std::string(cell) + "' as a number",
                         line, column);
    }
    return v;
}

Interval make_interval(double lo, double hi, std::size_t line, std::size_t column)
{
    try {
        return Interval(lo, hi);
    } catch (const InvalidInterval &e) {
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what(), line,
                         column);
    }
}

} // namespace

LassoDataset read_dataset_csv(std::istream &in)
{
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            have_header = true;
            break;
        }
    }
    if (!have_header) {
        throw ParseError("dataset is empty", line_no);
    }

    const auto header = split_commas(trim(line));
    if (header.size() < 4 || header.size() % 2 != 0) {
        throw ParseError("line " + std::to_string(line_no) + ": header must have 2l+2 columns with l >= 1, got "
                             + std::to_string(header.size()),
                         line_no);
    }
    const std::size_t l = (header.size() - 2) / 2;
    for (std::size_t i = 0; i < l; ++i) {
        const std::string base = "x" + std::to_string(i + 1);
        if (trim(header[2 * i]) != base + "_lo" || trim(header[2 * i + 1]) != base + "_hi") {
            throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(2 * i + 1)
                                 + ": expected header " + base + "_lo," + base + "_hi",
                             line_no, 2 * i + 1);
        }
    }
    if (trim(header[2 * l]) != "y_lo" || trim(header[2 * l + 1]) != "y_hi") {
        throw ParseError("line " + std::to_string(line_no) + ": header must end with y_lo,y_hi", line_no, 2 * l + 1);
    }

    const std::size_t expected = 2 * l + 2;
    std::vector<LassoSample> samples;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto cells = split_commas(body);
        if (cells.size() != expected) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 2l+2 = " + std::to_string(expected)
                                 + " columns, got " + std::to_string(cells.size()),
                             line_no);
        }
        std::vector<double> v(expected);
        for (std::size_t c = 0; c < expected; ++c) {
            v[c] = parse_cell(cells[c], line_no, c + 1);
        }
        IntervalVector x(l);
        for (std::size_t i = 0; i < l; ++i) {
            x[i] = make_interval(v[2 * i], v[2 * i + 1], line_no, 2 * i + 1);
        }
        samples.push_back({std::move(x), make_interval(v[2 * l], v[2 * l + 1], line_no, 2 * l + 1)});
    }
    if (samples.empty()) {
        throw ParseError("dataset has a header but no samples", line_no);
    }
    return LassoDataset(std::move(samples));
}

LassoDataset read_dataset_csv(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open dataset " + path.string());
    }
    return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream &out, const LassoDataset &ds)
{
    for (std::size_t i = 0; i < ds.feature_dim(); ++i) {
        out << 'x' << i + 1 << "_lo,x" << i + 1 << "_hi,";
    }
    out << "y_lo,y_hi\n";
    for (const auto &s : ds.samples()) {
        for (const auto &xi : s.x) {
            out << format_real(xi.lo()) << ',' << format_real(xi.hi()) << ',';
        }
        out << format_real(s.y.lo()) << ',' << format_real(s.y.hi()) << '\n';
    }
}

void write_trace_csv(std::ostream &out, const IterationTrace &trace)
{
    const std::size_t n = trace.initial_x.size();
    out << 'k';
    for (std::size_t i = 0; i < n; ++i) {
        out << ",x" << i + 1;
    }
    out << ",F_lo,F_hi";
    for (std::size_t i = 0; i < n; ++i) {
        out << ",g" << i + 1 << "_lo,g" << i + 1 << "_hi";
    }
    for (std::size_t i = 0; i < n; ++i) {
        out << ",W" << i + 1;
    }
    out << ",alpha\n";
    for (const auto &r : trace.records) {
        out << r.k;
        for (double v : r.x) {
            out << ',' << format_real(v);
        }
        out << ',' << format_real(r.value.lo()) << ',' << format_real(r.value.hi());
        for (const auto &g : r.subgradient) {
            out << ',' << format_real(g.lo()) << ',' << format_real(g.hi());
        }
        for (double v : r.direction) {
            out << ',' << format_real(v);
        }
        out << ',' << format_real(r.alpha) << '\n';
    }
}

nlohmann::json to_json(const Interval &a)
{
    return nlohmann::json::array({a.lo(), a.hi()});
}

nlohmann::json to_json(const IntervalVector &v)
{
    auto out = nlohmann::json::array();
    for (const auto &a : v) {
        out.push_back(to_json(a));
    }
    return out;
}

nlohmann::json to_json(const Archive &archive)
{
    nlohmann::json values = nlohmann::json::array();
    for (const auto &a : archive.nondominated_set) {
        values.push_back(to_json(a));
    }
    return {{"efficient_set", archive.efficient_set}, {"nondominated_set", values}};
}

nlohmann::json to_json(const SubgradientCheckReport &report)
{
    auto violations = nlohmann::json::array();
    for (const auto &v : report.violations) {
        violations.push_back(
            {{"sample_index", v.sample_index}, {"x", v.x}, {"lhs", to_json(v.lhs)}, {"rhs", to_json(v.rhs)}});
    }
    return {{"point", report.point},
            {"candidate", to_json(report.candidate)},
            {"samples_checked", report.samples_checked},
            {"violations", violations},
            {"passed", report.passed()}};
}

namespace
{

std::string vector_text(const std::vector<double> &v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + format_real(v[i]);
    }
    return out + ")";
}

} // namespace

std::string to_text(const SubgradientCheckReport &report)
{
    std::ostringstream os;
    os << "point " << vector_text(report.point) << '\n';
    os << "candidate " << to_string(report.candidate) << '\n';
    os << "samples " << report.samples_checked << '\n';
    for (const auto &v : report.violations) {
        os << "violation " << v.sample_index << " x=" << vector_text(v.x) << " lhs=" << to_string(v.lhs)
           << " rhs=" << to_string(v.rhs) << '\n';
    }
    os << "passed " << (report.passed() ? "true" : "false") << '\n';
    return os.str();
}

nlohmann::json fit_to_json(const LassoFit &fit)
{
    auto beta_3dp = nlohmann::json::array();
    for (double b : fit.beta) {
        beta_3dp.push_back(format_fixed(b, 3));
    }
    return {{"beta", fit.beta},
            {"beta_3dp", beta_3dp},
            {"error", to_json(fit.error)},
            {"error_3dp", "[" + format_fixed(fit.error.lo(), 3) + ", " + format_fixed(fit.error.hi(), 3) + "]"},
            {"feature_dim", fit.beta.size()},
            {"archive", to_json(fit.archive)},
            {"termination", std::string(to_string(fit.trace.termination))},
            {"config",
             {{"w", fit.w},
              {"w_prime", 1.0 - fit.w},
              {"schedule", fit.schedule},
              {"iterations", fit.iterations},
              {"init", fit.init},
              {"L", to_json(fit.tuning)}}}};
}

FitFile read_fit_json(std::istream &in)
{
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("fit file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("beta") || !doc["beta"].is_array() || doc["beta"].empty()) {
        throw ParseError("fit file needs a nonempty 'beta' array");
    }
    FitFile out;
    for (const auto &b : doc["beta"]) {
        if (!b.is_number()) {
            throw ParseError("fit file 'beta' must contain numbers");
        }
        out.beta.push_back(b.get<double>());
    }
    return out;
}

FitFile read_fit_json(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open fit file " + path.string());
    }
    return read_fit_json(in);
}

nlohmann::json run_summary(const SolverConfig &cfg, const SolveResult &result, double wall_seconds)
{
    return {{"config",
             {{"w", cfg.w},
              {"w_prime", cfg.w_prime()},
              {"schedule", cfg.schedule.describe()},
              {"max_iter", cfg.max_iter},
              {"x0", cfg.x0},
              {"zero_direction_policy", cfg.zero_direction_policy == ZeroDirectionPolicy::stop ? "stop" : "skip"}}},
            {"iterations_run", result.trace.records.size()},
            {"termination", std::string(to_string(result.trace.termination))},
            {"archive", to_json(result.archive)},
            {"wall_time_seconds", wall_seconds}};
}

void write_report_csv(std::ostream &out, const PredictionReport &report)
{
    out << "k,y_lo,y_hi,yhat_lo,yhat_hi,has_overlap,overlap_lo,overlap_hi,actual_excess,estimate_excess,"
           "actual_excess_width,estimate_excess_width\n";
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const auto &r = report.rows[k];
        out << k + 1 << ',' << format_real(r.actual.lo()) << ',' << format_real(r.actual.hi()) << ','
            << format_real(r.estimate.lo()) << ',' << format_real(r.estimate.hi()) << ',' << (r.overlap ? 1 : 0)
            << ',';
        if (r.overlap) {
            out << format_real(r.overlap->lo()) << ',' << format_real(r.overlap->hi());
        } else {
            out << ',';
        }
        out << ',' << (r.actual_excess_width() > 0.0 ? 1 : 0) << ',' << (r.estimate_excess_width() > 0.0 ? 1 : 0)
            << ',' << format_real(r.actual_excess_width()) << ',' << format_real(r.estimate_excess_width()) << '\n';
    }
}

std::string file_digest(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in) {
        in.read(buf, sizeof buf);
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

} // namespace ghopt::io
