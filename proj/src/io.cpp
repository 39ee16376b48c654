#include "io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dphist {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::uint64_t config_hash64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

json schema_to_json(const CubeSchema& schema) {
    json attrs = json::array();
    for (const auto& d : schema.dims) {
        json a;
        a["name"] = d.name;
        if (d.numeric())
            a["edges"] = d.edges;
        else
            a["bins"] = d.bins;
        attrs.push_back(std::move(a));
    }
    return json{{"attributes", std::move(attrs)}};
}

CubeSchema schema_from_json(const json& j) {
    if (!j.is_object() || !j.contains("attributes") || !j["attributes"].is_array())
        throw std::invalid_argument("schema JSON needs an 'attributes' array");
    CubeSchema schema;
    for (const auto& a : j["attributes"]) {
        if (!a.is_object() || !a.contains("name") || !a["name"].is_string())
            throw std::invalid_argument("schema attribute needs a 'name'");
        std::string name = a["name"].get<std::string>();
        if (a.contains("edges")) {
            if (!a["edges"].is_array())
                throw std::invalid_argument("attribute '" + name + "': 'edges' must be an array");
            schema.dims.push_back(numeric_attribute(name, a["edges"].get<std::vector<double>>()));
        } else if (a.contains("bins")) {
            if (!a["bins"].is_array())
                throw std::invalid_argument("attribute '" + name + "': 'bins' must be an array");
            schema.dims.push_back(
                categorical_attribute(name, a["bins"].get<std::vector<std::string>>()));
        } else {
            throw std::invalid_argument("attribute '" + name + "' needs 'bins' or 'edges'");
        }
    }
    schema.validate();
    return schema;
}

CubeSchema schema_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema file '" + path + "'");
    json j;
    in >> j;
    return schema_from_json(j);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::vector<Record> records_from_csv(std::istream& in, const CubeSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("data CSV is empty");
    auto header = split_csv_line(line);
    // map schema dim -> CSV column
    std::vector<std::size_t> col_of(schema.ndims(), std::size_t(-1));
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::size_t d = schema.dim_index(header[c]);  // throws on unknown column
        if (col_of[d] != std::size_t(-1))
            throw std::invalid_argument("duplicate CSV column '" + header[c] + "'");
        col_of[d] = c;
    }
    for (std::size_t d = 0; d < schema.ndims(); ++d)
        if (col_of[d] == std::size_t(-1))
            throw std::invalid_argument("data CSV is missing column '" + schema.dims[d].name + "'");
    std::vector<Record> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw std::invalid_argument("CSV line " + std::to_string(lineno) + " has " +
                                        std::to_string(cells.size()) + " fields, expected " +
                                        std::to_string(header.size()));
        Record r(schema.ndims());
        for (std::size_t d = 0; d < schema.ndims(); ++d) r[d] = cells[col_of[d]];
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Record> records_from_csv_file(const std::string& path, const CubeSchema& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file '" + path + "'");
    return records_from_csv(in, schema);
}

json release_to_json(const ReleasedHistogram& h) {
    json j;
    j["strategy"] = h.strategy;
    j["alpha1"] = h.alpha1;
    j["alpha2"] = h.alpha2;
    j["seed"] = h.seed;
    j["schema"] = schema_to_json(h.schema);
    j["cells"] = h.cell_hist;
    json boxes = json::array();
    for (const auto& sc : h.boxes)
        boxes.push_back(json{{"lo", sc.box.lo}, {"hi", sc.box.hi}, {"count", sc.count}});
    j["boxes"] = std::move(boxes);
    if (h.strategy == "dpcube") {
        j["kd"] = json{{"xi0", h.kd.xi0}, {"min_cells", h.kd.min_cells}, {"max_depth", h.kd.max_depth}};
    }
    // provenance: hash of the released configuration (not the noisy values)
    std::string canon = "strategy=" + h.strategy + ";alpha1=" + fmt_double(h.alpha1) +
                        ";alpha2=" + fmt_double(h.alpha2) + ";seed=" + std::to_string(h.seed) +
                        ";xi0=" + fmt_double(h.kd.xi0) +
                        ";min_cells=" + std::to_string(h.kd.min_cells) +
                        ";max_depth=" + std::to_string(h.kd.max_depth) +
                        ";schema=" + schema_to_json(h.schema).dump();
    j["config_hash"] = hash_hex(config_hash64(canon));
    return j;
}

ReleasedHistogram release_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("release JSON must be an object");
    for (const char* key : {"strategy", "alpha1", "alpha2", "seed", "schema", "cells", "boxes"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("release JSON is missing '") + key + "'");
    ReleasedHistogram h;
    h.schema = schema_from_json(j["schema"]);
    h.strategy = j["strategy"].get<std::string>();
    if (h.strategy != "cell" && h.strategy != "dpcube")
        throw std::invalid_argument("unknown release strategy '" + h.strategy + "'");
    h.alpha1 = j["alpha1"].get<double>();
    h.alpha2 = j["alpha2"].get<double>();
    h.seed = j["seed"].get<std::uint64_t>();
    h.cell_hist = j["cells"].get<CellVector>();
    if (h.cell_hist.size() != h.schema.cell_count())
        throw std::invalid_argument("release 'cells' length does not match schema");
    for (const auto& b : j["boxes"]) {
        SubcubeCount sc;
        sc.box.lo = b.at("lo").get<std::vector<std::size_t>>();
        sc.box.hi = b.at("hi").get<std::vector<std::size_t>>();
        sc.count = b.at("count").get<double>();
        validate_box(h.schema, sc.box);
        h.boxes.push_back(std::move(sc));
    }
    if (!h.boxes.empty()) validate_partition(h.schema, h.box_list());
    if (j.contains("kd")) {
        h.kd.xi0 = j["kd"].at("xi0").get<double>();
        h.kd.min_cells = j["kd"].at("min_cells").get<std::size_t>();
        h.kd.max_depth = j["kd"].at("max_depth").get<std::size_t>();
    }
    return h;
}

ReleasedHistogram release_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open release file '" + path + "'");
    json j;
    in >> j;
    return release_from_json(j);
}

std::string ledger_to_jsonl(const std::vector<ChargeEntry>& log) {
    std::string out;
    for (const auto& e : log) {
        json j{{"label", e.label},
               {"alpha", e.alpha},
               {"kind", e.kind == ChargeKind::parallel ? "parallel" : "sequential"}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<LinearQuery> queries_from_csv(std::istream& in, const CubeSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("query CSV is empty");
    auto header = split_csv_line(line);
    if (header.size() != 2 * schema.ndims())
        throw std::invalid_argument("query CSV header must have lo/hi pairs for every attribute");
    for (std::size_t d = 0; d < schema.ndims(); ++d) {
        if (header[2 * d] != "lo_" + schema.dims[d].name ||
            header[2 * d + 1] != "hi_" + schema.dims[d].name)
            throw std::invalid_argument("query CSV header mismatch at attribute '" +
                                        schema.dims[d].name + "'");
    }
    std::vector<LinearQuery> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw std::invalid_argument("query CSV line " + std::to_string(lineno) +
                                        " has the wrong number of fields");
        LinearQuery q;
        q.lo.resize(schema.ndims());
        q.hi.resize(schema.ndims());
        for (std::size_t d = 0; d < schema.ndims(); ++d) {
            auto parse = [&](const std::string& s) {
                std::size_t v = 0;
                auto r = std::from_chars(s.data(), s.data() + s.size(), v);
                if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
                    throw std::invalid_argument("query CSV line " + std::to_string(lineno) +
                                                ": bad bin index '" + s + "'");
                return v;
            };
            q.lo[d] = parse(cells[2 * d]);
            q.hi[d] = parse(cells[2 * d + 1]);
        }
        validate_box(schema, q);
        out.push_back(std::move(q));
    }
    return out;
}

std::string queries_to_csv(const CubeSchema& schema, const std::vector<LinearQuery>& qs) {
    std::string out;
    for (std::size_t d = 0; d < schema.ndims(); ++d) {
        if (d) out += ',';
        out += "lo_" + schema.dims[d].name + ",hi_" + schema.dims[d].name;
    }
    out += '\n';
    for (const auto& q : qs) {
        for (std::size_t d = 0; d < schema.ndims(); ++d) {
            if (d) out += ',';
            out += std::to_string(q.lo[d]) + ',' + std::to_string(q.hi[d]);
        }
        out += '\n';
    }
    return out;
}

namespace {

json node_to_json(const CubeSchema& schema, const Id3Params& p, const TreeNode* node) {
    const auto& class_bins = schema.dims[p.class_dim].bins;
    if (node->is_leaf) return json{{"type", "leaf"}, {"label", class_bins[node->label]}};
    json children = json::object();
    const auto& fdim = schema.dims[node->feature];
    for (std::size_t v = 0; v < node->children.size(); ++v)
        children[fdim.bins[v]] = node_to_json(schema, p, node->children[v].get());
    return json{{"type", "split"}, {"feature", fdim.name}, {"children", std::move(children)}};
}

}  // namespace

json tree_to_json(const DecisionTree& tree) {
    json j;
    j["class"] = tree.schema.dims[tree.params.class_dim].name;
    json feats = json::array();
    for (std::size_t f : tree.params.features) feats.push_back(tree.schema.dims[f].name);
    j["features"] = std::move(feats);
    j["root"] = node_to_json(tree.schema, tree.params, tree.root.get());
    return j;
}

}  // namespace dphist
