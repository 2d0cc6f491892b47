#include "imodel/cascade_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "imodel/errors.hpp"

namespace imodel {

using ordered_json = nlohmann::ordered_json;

CascadeFormat parse_cascade_format(const std::string& name) {
    if (name == "json") return CascadeFormat::json;
    if (name == "csv") return CascadeFormat::csv;
    throw ValidationError("unknown cascade format '" + name + "' (expected json or csv)");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed on " + path.string());
    return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed on " + path.string());
}

namespace {

CascadeSet finish_load(ComponentId n_components, std::vector<Cascade> raw, const LoadOptions& opts) {
    CascadeSet cs;
    cs.n_components = n_components;
    cs.cascades.reserve(raw.size());
    for (auto& c : raw)
        cs.cascades.push_back(opts.dedupe_first ? dedupe_first(std::move(c))
                                                : normalized(std::move(c)));
    validate(cs);
    return cs;
}

ComponentId max_id_plus_one(const std::vector<Cascade>& raw) {
    ComponentId n = 0;
    for (const auto& c : raw)
        for (const auto& g : c.generations)
            for (ComponentId v : g)
                if (v >= n) n = v + 1;
    return n;
}

}  // namespace

CascadeSet cascades_from_json(const std::string& text, const LoadOptions& opts) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ValidationError(std::string("cascade JSON: ") + e.what());
    }
    try {
        ComponentId n = doc.at("n_components").get<ComponentId>();
        std::vector<Cascade> raw;
        for (const auto& jc : doc.at("cascades")) {
            Cascade c;
            for (const auto& jg : jc) c.generations.push_back(jg.get<std::vector<ComponentId>>());
            raw.push_back(std::move(c));
        }
        if (opts.n_components) n = *opts.n_components;
        return finish_load(n, std::move(raw), opts);
    } catch (const ordered_json::exception& e) {
        throw ValidationError(std::string("cascade JSON: ") + e.what());
    }
}

std::string cascades_to_json(const CascadeSet& cs) {
    ordered_json doc;
    doc["n_components"] = cs.n_components;
    auto& arr = doc["cascades"] = ordered_json::array();
    for (const auto& c : cs.cascades) arr.push_back(c.generations);
    return doc.dump();
}

CascadeSet cascades_from_csv(const std::string& text, const LoadOptions& opts) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("cascade CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "cascade,generation,component")
        throw ValidationError("cascade CSV: expected header 'cascade,generation,component'");

    // cascade id -> generation -> ids; both keys may arrive in any order.
    std::map<long long, std::map<long long, std::vector<ComponentId>>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        long long cascade_id, generation, component;
        char c1, c2;
        std::istringstream row(line);
        if (!(row >> cascade_id >> c1 >> generation >> c2 >> component) || c1 != ',' || c2 != ',' ||
            (row >> std::ws, !row.eof()))
            throw ValidationError("cascade CSV line " + std::to_string(lineno) +
                                  ": expected 'cascade,generation,component'");
        if (cascade_id < 0 || generation < 0 || component < 0)
            throw ValidationError("cascade CSV line " + std::to_string(lineno) +
                                  ": negative value");
        rows[cascade_id][generation].push_back(static_cast<ComponentId>(component));
    }

    std::vector<Cascade> raw;
    raw.reserve(rows.size());
    for (auto& [id, gens] : rows) {
        Cascade c;
        const long long last = gens.rbegin()->first;
        c.generations.resize(static_cast<std::size_t>(last) + 1);
        for (auto& [g, ids] : gens) c.generations[static_cast<std::size_t>(g)] = std::move(ids);
        raw.push_back(std::move(c));
    }
    const ComponentId n = opts.n_components ? *opts.n_components : max_id_plus_one(raw);
    return finish_load(n, std::move(raw), opts);
}

std::string cascades_to_csv(const CascadeSet& cs) {
    std::ostringstream out;
    out << "cascade,generation,component\n";
    for (std::size_t m = 0; m < cs.cascades.size(); ++m)
        for (std::size_t g = 0; g < cs.cascades[m].generations.size(); ++g)
            for (ComponentId v : cs.cascades[m].generations[g])
                out << m << ',' << g << ',' << v << '\n';
    return std::move(out).str();
}

CascadeSet load_cascades(const std::filesystem::path& path, CascadeFormat format,
                         const LoadOptions& opts) {
    const std::string text = read_text_file(path);
    return format == CascadeFormat::json ? cascades_from_json(text, opts)
                                         : cascades_from_csv(text, opts);
}

void save_cascades(const CascadeSet& cs, const std::filesystem::path& path, CascadeFormat format) {
    write_text_file(path,
                    format == CascadeFormat::json ? cascades_to_json(cs) : cascades_to_csv(cs));
}

}  // namespace imodel
