#include "imodel/matrix_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "imodel/cascade_io.hpp"
#include "imodel/errors.hpp"

namespace imodel {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw ValidationError("cannot format value");
    return std::string(buf, end);
}

double parse_double(const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ValidationError("malformed number '" + text + "'");
    return v;
}

std::string format_percent(std::size_t part, std::size_t whole) {
    if (whole == 0) throw ValidationError("percentage of an empty whole");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%",
                  100.0 * static_cast<double>(part) / static_cast<double>(whole));
    return buf;
}

namespace {

std::int64_t parse_int(const std::string& text) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ValidationError("malformed integer '" + text + "'");
    return v;
}

// Splits a CSV body into rows of `columns` cells, checking the header.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               const std::string& header) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header)
        throw ValidationError(path.string() + ": expected header '" + header + "'");
    const std::size_t columns = 1 + static_cast<std::size_t>(
                                        std::count(header.begin(), header.end(), ','));
    std::vector<std::vector<std::string>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t begin = 0;
        while (true) {
            const std::size_t comma = line.find(',', begin);
            cells.push_back(line.substr(begin, comma - begin));
            if (comma == std::string::npos) break;
            begin = comma + 1;
        }
        if (cells.size() != columns)
            throw ValidationError(path.string() + " line " + std::to_string(lineno) +
                                  ": expected " + std::to_string(columns) + " columns");
        rows.push_back(std::move(cells));
    }
    return rows;
}

ComponentId parse_id(const std::string& text, ComponentId n, const std::filesystem::path& path) {
    const std::int64_t v = parse_int(text);
    if (v < 0 || v >= static_cast<std::int64_t>(n))
        throw ValidationError(path.string() + ": id " + text + " out of range (n = " +
                              std::to_string(n) + ")");
    return static_cast<ComponentId>(v);
}

}  // namespace

void write_count_matrix_csv(const std::filesystem::path& path, const CountMatrix& m) {
    std::ostringstream out;
    out << "i,j,value\n";
    m.for_each([&](ComponentId i, ComponentId j, std::int64_t v) {
        out << i << ',' << j << ',' << v << '\n';
    });
    write_text_file(path, std::move(out).str());
}

CountMatrix read_count_matrix_csv(const std::filesystem::path& path, ComponentId n) {
    CountMatrix m(n);
    for (const auto& row : read_csv(path, "i,j,value"))
        m.set(parse_id(row[0], n, path), parse_id(row[1], n, path), parse_int(row[2]));
    return m;
}

void write_prob_matrix_csv(const std::filesystem::path& path, const ProbMatrix& m) {
    std::ostringstream out;
    out << "i,j,value\n";
    m.for_each([&](ComponentId i, ComponentId j, double v) {
        out << i << ',' << j << ',' << format_double(v) << '\n';
    });
    write_text_file(path, std::move(out).str());
}

ProbMatrix read_prob_matrix_csv(const std::filesystem::path& path, ComponentId n) {
    ProbMatrix m(n);
    for (const auto& row : read_csv(path, "i,j,value"))
        m.set(parse_id(row[0], n, path), parse_id(row[1], n, path), parse_double(row[2]));
    return m;
}

void write_int_vector_csv(const std::filesystem::path& path,
                          const std::vector<std::int64_t>& v) {
    std::ostringstream out;
    out << "i,value\n";
    for (std::size_t i = 0; i < v.size(); ++i) out << i << ',' << v[i] << '\n';
    write_text_file(path, std::move(out).str());
}

void write_double_vector_csv(const std::filesystem::path& path, const std::vector<double>& v) {
    std::ostringstream out;
    out << "i,value\n";
    for (std::size_t i = 0; i < v.size(); ++i)
        out << i << ',' << format_double(v[i]) << '\n';
    write_text_file(path, std::move(out).str());
}

namespace {

template <typename T, typename Parse>
std::vector<T> read_vector_csv(const std::filesystem::path& path, Parse parse) {
    std::vector<T> v;
    for (const auto& row : read_csv(path, "i,value")) {
        if (parse_int(row[0]) != static_cast<std::int64_t>(v.size()))
            throw ValidationError(path.string() + ": vector rows must cover 0..n-1 in order");
        v.push_back(parse(row[1]));
    }
    return v;
}

}  // namespace

std::vector<std::int64_t> read_int_vector_csv(const std::filesystem::path& path) {
    return read_vector_csv<std::int64_t>(path, parse_int);
}

std::vector<double> read_double_vector_csv(const std::filesystem::path& path) {
    return read_vector_csv<double>(path, parse_double);
}

void write_weighted_links_csv(const std::filesystem::path& path,
                              const std::vector<WeightedLink>& links) {
    std::ostringstream out;
    out << "i,j,b,weight\n";
    for (const auto& l : links)
        out << l.source << ',' << l.target << ',' << format_double(l.probability) << ','
            << format_double(l.weight) << '\n';
    write_text_file(path, std::move(out).str());
}

void write_ccdf_csv(const std::filesystem::path& path, const std::vector<CcdfPoint>& points) {
    std::ostringstream out;
    out << "value,ccd_probability\n";
    for (const auto& p : points)
        out << format_double(p.value) << ',' << format_double(p.probability) << '\n';
    write_text_file(path, std::move(out).str());
}

void write_quantify_dir(const std::filesystem::path& dir, const QuantifyResult& q) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    ordered_json header;
    header["n"] = q.counts.n();
    header["m_used"] = q.counts.m_used;
    write_text_file(dir / "header.json", header.dump(2) + "\n");

    write_count_matrix_csv(dir / "A.csv", q.counts.a);
    write_count_matrix_csv(dir / "A_prime.csv", q.counts.a_prime);
    write_prob_matrix_csv(dir / "B.csv", q.matrix.b);
    write_int_vector_csv(dir / "N.csv", q.counts.n_total);
    write_int_vector_csv(dir / "N0.csv", q.counts.n_gen0);
    write_double_vector_csv(dir / "tau.csv", q.matrix.tau);
}

QuantifyResult read_quantify_dir(const std::filesystem::path& dir) {
    ordered_json header;
    try {
        header = ordered_json::parse(read_text_file(dir / "header.json"));
    } catch (const ordered_json::parse_error& e) {
        throw ValidationError((dir / "header.json").string() + ": " + e.what());
    }
    ComponentId n = 0;
    std::int64_t m_used = 0;
    try {
        n = header.at("n").get<ComponentId>();
        m_used = header.at("m_used").get<std::int64_t>();
    } catch (const ordered_json::exception& e) {
        throw ValidationError((dir / "header.json").string() + ": " + e.what());
    }

    QuantifyResult q;
    q.counts.a = read_count_matrix_csv(dir / "A.csv", n);
    q.counts.a_prime = read_count_matrix_csv(dir / "A_prime.csv", n);
    q.counts.n_total = read_int_vector_csv(dir / "N.csv");
    q.counts.n_gen0 = read_int_vector_csv(dir / "N0.csv");
    q.counts.m_used = m_used;
    q.matrix.b = read_prob_matrix_csv(dir / "B.csv", n);
    q.matrix.tau = read_double_vector_csv(dir / "tau.csv");
    q.matrix.m_used = m_used;
    if (q.counts.n_total.size() != n || q.counts.n_gen0.size() != n ||
        q.matrix.tau.size() != n)
        throw ValidationError(dir.string() + ": vector lengths disagree with header n");
    q.indistinguishable_ratio =
        q.counts.a.nonzero_count() == 0 ? 0.0 : cause_indistinguishable_ratio(q.counts.a);
    return q;
}

InteractionMatrix read_matrix_and_tau(const std::filesystem::path& b_path,
                                      const std::filesystem::path& tau_path,
                                      std::int64_t m_used) {
    InteractionMatrix m;
    m.tau = read_double_vector_csv(tau_path);
    m.b = read_prob_matrix_csv(b_path, static_cast<ComponentId>(m.tau.size()));
    m.m_used = m_used;
    return m;
}

}  // namespace imodel
