// dphist CLI: ingest / release / query / evaluate / simulate / classify /
// blocking over the shared-library C API.

#include <dphist/dphist.h>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

// seed for evaluation workloads, independent of the release noise stream
constexpr std::uint64_t kEvalSeedSalt = 0x9e3779b97f4a7c15ULL;

struct CliError {
    int code;
    std::string message;
};

void check(dph_status st, const std::string& what) {
    if (st == DPH_OK) return;
    throw CliError{int(st), what + ": " + dph_last_error()};
}

std::string take_string(char* s) {
    std::string out(s ? s : "");
    dph_string_free(s);
    return out;
}

// RAII for C API handles
template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    explicit Handle(T* q) : p(q) {}
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    Handle(Handle&& o) noexcept : p(o.p) { o.p = nullptr; }
    Handle& operator=(Handle&& o) noexcept {
        if (this != &o) {
            reset(o.p);
            o.p = nullptr;
        }
        return *this;
    }
    ~Handle() { reset(); }
    void reset(T* q = nullptr) {
        if (p) Free(p);
        p = q;
    }
    T** out() {
        reset();
        return &p;
    }
    T* get() const { return p; }
};

using SchemaH = Handle<dph_schema, dph_schema_free>;
using DatasetH = Handle<dph_dataset, dph_dataset_free>;
using ReleaseH = Handle<dph_release, dph_release_free>;
using WorkloadH = Handle<dph_workload, dph_workload_free>;
using TreeH = Handle<dph_tree, dph_tree_free>;

std::string fmt(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{int(DPH_E_IO), "cannot write '" + path.string() + "'"};
    out << text;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{int(DPH_E_IO), "cannot read '" + path.string() + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// provenance comment placed at the top of every CSV the CLI writes
std::string provenance_line(const std::string& canonical_config, std::uint64_t seed) {
    std::uint64_t h = 0;
    check(dph_config_hash64(canonical_config.c_str(), &h), "config hash");
    std::ostringstream ss;
    ss << "# config=" << std::hex << h << std::dec << " seed=" << seed << "\n";
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct LoadedPair {
    SchemaH schema;
    DatasetH data;
};

LoadedPair load_schema_and_data(const std::string& schema_path, const std::string& data_path) {
    LoadedPair lp;
    check(dph_schema_from_file(schema_path.c_str(), lp.schema.out()), "schema");
    check(dph_dataset_from_csv_file(lp.schema.get(), data_path.c_str(), lp.data.out()), "data");
    return lp;
}

// ---- subcommand options ----

struct CommonOpts {
    std::string schema, data, out = ".";
    std::uint64_t seed = 1;
};

int cmd_ingest(const CommonOpts& o) {
    auto lp = load_schema_and_data(o.schema, o.data);
    size_t cells = 0, rows = 0;
    check(dph_schema_cells(lp.schema.get(), &cells), "schema");
    check(dph_dataset_rows(lp.data.get(), &rows), "data");
    std::vector<double> counts(cells);
    check(dph_dataset_counts(lp.data.get(), counts.data()), "counts");

    std::string canon = "cmd=ingest;schema=" + o.schema + ";data=" + o.data;
    std::uint64_t h = 0;
    check(dph_config_hash64(canon.c_str(), &h), "config hash");
    nlohmann::json j;
    std::ostringstream hex;
    hex << std::hex << h;
    j["config_hash"] = hex.str();
    j["seed"] = o.seed;
    j["rows"] = rows;
    char* sj = nullptr;
    check(dph_schema_to_json(lp.schema.get(), &sj), "schema json");
    j["schema"] = nlohmann::json::parse(take_string(sj));
    j["counts"] = counts;
    write_file(std::filesystem::path(o.out) / "counts.json", j.dump(2) + "\n");
    std::cout << "ingested " << rows << " records into " << cells << " cells\n";
    return 0;
}

struct ReleaseOpts : CommonOpts {
    std::string strategy = "dpcube";
    double alpha = 1.0;
    double alpha1 = 0;  // 0 = alpha/4 default
    double xi0 = 0;
    std::size_t min_cells = 1;
    std::size_t max_depth = 0;
};

int cmd_release(const ReleaseOpts& o) {
    auto lp = load_schema_and_data(o.schema, o.data);
    ReleaseH rel;
    if (o.strategy == "cell") {
        check(dph_release_cell(lp.data.get(), o.alpha, o.seed, rel.out()), "release");
    } else if (o.strategy == "dpcube") {
        check(dph_release_dpcube(lp.data.get(), o.alpha, o.alpha1, o.xi0, o.min_cells, o.max_depth,
                                 o.seed, rel.out()),
              "release");
    } else {
        throw CliError{int(DPH_E_INVALID), "unknown strategy '" + o.strategy + "'"};
    }
    char* json_text = nullptr;
    check(dph_release_to_json(rel.get(), &json_text), "release json");
    write_file(std::filesystem::path(o.out) / "release.json", take_string(json_text) + "\n");
    char* ledger = nullptr;
    check(dph_release_ledger_jsonl(rel.get(), &ledger), "ledger");
    write_file(std::filesystem::path(o.out) / "ledger.jsonl", take_string(ledger));

    size_t boxes = 0;
    double a1 = 0, a2 = 0;
    check(dph_release_box_count(rel.get(), &boxes), "release");
    check(dph_release_alphas(rel.get(), &a1, &a2), "release");
    std::cout << "released strategy=" << o.strategy << " boxes=" << boxes
              << " alpha=" << fmt(a1 + a2) << "\n";
    return 0;
}

struct QueryOpts {
    std::string release, queries, out = ".";
    std::string method = "uniform";
};

int cmd_query(const QueryOpts& o) {
    ReleaseH rel;
    check(dph_release_from_file(o.release.c_str(), rel.out()), "release");
    SchemaH schema;
    check(dph_release_schema(rel.get(), schema.out()), "release schema");
    size_t nd = 0;
    check(dph_schema_ndims(schema.get(), &nd), "schema");

    // query CSV: lo_<attr>,hi_<attr> per dimension, inclusive bin indices
    std::istringstream in(read_file(o.queries));
    std::string line;
    if (!std::getline(in, line)) throw CliError{int(DPH_E_PARSE), "query CSV is empty"};
    auto header = split(line, ',');
    if (header.size() != 2 * nd)
        throw CliError{int(DPH_E_PARSE), "query CSV must have a lo/hi column pair per attribute"};
    for (size_t d = 0; d < nd; ++d) {
        char* name = nullptr;
        check(dph_schema_dim_name(schema.get(), d, &name), "schema");
        std::string n = take_string(name);
        if (header[2 * d] != "lo_" + n || header[2 * d + 1] != "hi_" + n)
            throw CliError{int(DPH_E_PARSE), "query CSV header mismatch at attribute '" + n + "'"};
    }

    double a1 = 0, a2 = 0;
    check(dph_release_alphas(rel.get(), &a1, &a2), "release");
    std::ostringstream csv;
    std::uint64_t rel_seed = 0;  // provenance seed comes from the release file
    {
        nlohmann::json rj = nlohmann::json::parse(read_file(o.release));
        rel_seed = rj.value("seed", std::uint64_t{0});
    }
    csv << provenance_line("cmd=query;release=" + o.release + ";queries=" + o.queries +
                               ";method=" + o.method,
                           rel_seed);
    csv << "query,method,estimate\n";
    size_t qi = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split(line, ',');
        if (cells.size() != 2 * nd)
            throw CliError{int(DPH_E_PARSE),
                           "query CSV row " + std::to_string(qi) + " has the wrong field count"};
        std::vector<size_t> lo(nd), hi(nd);
        for (size_t d = 0; d < nd; ++d) {
            auto parse = [&](const std::string& s) {
                size_t v = 0;
                auto r = std::from_chars(s.data(), s.data() + s.size(), v);
                if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
                    throw CliError{int(DPH_E_PARSE), "bad bin index '" + s + "'"};
                return v;
            };
            lo[d] = parse(cells[2 * d]);
            hi[d] = parse(cells[2 * d + 1]);
        }
        double est = 0;
        check(dph_estimate(rel.get(), o.method.c_str(), lo.data(), hi.data(), &est), "estimate");
        csv << qi << ',' << o.method << ',' << fmt(est) << "\n";
        ++qi;
    }
    write_file(std::filesystem::path(o.out) / "estimates.csv", csv.str());
    std::cout << "estimated " << qi << " queries with method=" << o.method << "\n";
    return 0;
}

struct EvaluateOpts : CommonOpts {
    std::string release;
    std::size_t queries = 10000;
    double epsilon = 100.0;
    std::string methods = "uniform,ls,cell";
    std::string baseline;
    std::uint64_t seed = 0;  // 0 = derive from the release seed
};

int cmd_evaluate(const EvaluateOpts& o) {
    auto lp = load_schema_and_data(o.schema, o.data);
    ReleaseH rel;
    check(dph_release_from_file(o.release.c_str(), rel.out()), "release");
    size_t m = 0;
    check(dph_schema_cells(lp.schema.get(), &m), "schema");

    std::uint64_t rel_seed = nlohmann::json::parse(read_file(o.release)).value("seed", std::uint64_t{0});
    std::uint64_t eval_seed = o.seed ? o.seed : (rel_seed ^ kEvalSeedSalt);

    // size bands: quartiles of the cell count plus the full range
    struct Band {
        std::string name;
        std::size_t lo, hi;
    };
    std::vector<Band> bands{{"all", 1, m}};
    if (m >= 4) {
        bands.push_back({"q1", 1, m / 4});
        bands.push_back({"q2", m / 4 + 1, m / 2});
        bands.push_back({"q3", m / 2 + 1, (3 * m) / 4});
        bands.push_back({"q4", (3 * m) / 4 + 1, m});
    }

    std::string canon = "cmd=evaluate;release=" + o.release + ";queries=" +
                        std::to_string(o.queries) + ";epsilon=" + fmt(o.epsilon) +
                        ";methods=" + o.methods;
    std::ostringstream csv;
    csv << provenance_line(canon, eval_seed);
    csv << "source,method,size_band,avg_abs_error,empirical_usefulness\n";

    auto methods = split(o.methods, ',');
    for (std::size_t bi = 0; bi < bands.size(); ++bi) {
        const auto& band = bands[bi];
        WorkloadH w;
        auto st = dph_workload_generate(lp.schema.get(), o.queries, eval_seed + bi,
                                        band.lo, band.hi, w.out());
        if (st == DPH_E_INVALID) {
            std::cerr << "note: skipping size band " << band.name << " [" << band.lo << ","
                      << band.hi << "]: " << dph_last_error() << "\n";
            continue;
        }
        check(st, "workload");
        for (const auto& method : methods) {
            double err = 0, useful = 0;
            check(dph_eval_avg_abs_error(lp.data.get(), rel.get(), w.get(), method.c_str(), &err),
                  "evaluate");
            check(dph_eval_usefulness(lp.data.get(), rel.get(), w.get(), method.c_str(), o.epsilon,
                                      &useful),
                  "evaluate");
            csv << "this," << method << ',' << band.name << ',' << fmt(err) << ',' << fmt(useful)
                << "\n";
        }
    }

    if (!o.baseline.empty()) {
        // side-by-side rows from an external evaluation CSV (same columns)
        std::istringstream bin(read_file(o.baseline));
        std::string line;
        bool past_header = false;
        std::string tag = std::filesystem::path(o.baseline).stem().string();
        while (std::getline(bin, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (!past_header) {
                past_header = true;  // skip their header
                continue;
            }
            auto f = split(line, ',');
            if (f.size() == 5)
                csv << tag << ',' << f[1] << ',' << f[2] << ',' << f[3] << ',' << f[4] << "\n";
            else if (f.size() == 4)
                csv << tag << ',' << f[0] << ',' << f[1] << ',' << f[2] << ',' << f[3] << "\n";
        }
    }

    write_file(std::filesystem::path(o.out) / "evaluate.csv", csv.str());

    double wv = 0;
    if (dph_weighted_variance(lp.data.get(), rel.get(), &wv) == DPH_OK)
        std::cout << "weighted_variance=" << fmt(wv) << "\n";
    std::cout << "evaluated " << methods.size() << " methods over " << bands.size()
              << " size bands\n";
    return 0;
}

struct SimulateOpts {
    std::string sweep = "s";
    std::size_t np = 11;
    double alpha1 = 0.05;
    double alpha2 = 0.15;
    double gamma = 5;
    double eta = 5;
    std::size_t s = 5;
    std::size_t mc = 100000;
    std::uint64_t seed = 1;
    std::string out = ".";
};

int cmd_simulate(const SimulateOpts& o) {
    struct Point {
        double value;
        std::size_t s;
        std::size_t np;
        double a1, a2, gamma, eta;
    };
    std::vector<Point> grid;
    auto base = Point{0, o.s, o.np, o.alpha1, o.alpha2, o.gamma, o.eta};
    if (o.sweep == "s") {
        for (std::size_t s = 1; s <= o.np; ++s) {
            auto p = base;
            p.s = s;
            p.value = double(s);
            grid.push_back(p);
        }
    } else if (o.sweep == "alpha1") {
        double total = o.alpha1 + o.alpha2;
        for (double f : {0.05, 0.125, 0.25, 0.375, 0.5, 0.75, 0.95}) {
            auto p = base;
            p.a1 = f * total;
            p.a2 = total - p.a1;
            p.value = p.a1;
            grid.push_back(p);
        }
    } else if (o.sweep == "np") {
        for (std::size_t np : {2, 4, 6, 8, 11, 14, 17, 20}) {
            auto p = base;
            p.np = np;
            if (p.s > np) p.s = np;
            p.value = double(np);
            grid.push_back(p);
        }
    } else if (o.sweep == "gamma") {
        for (double g : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            auto p = base;
            p.gamma = g;
            p.value = g;
            grid.push_back(p);
        }
    } else if (o.sweep == "eta") {
        for (double e : {0.0, 2.0, 5.0, 10.0, 20.0}) {
            auto p = base;
            p.eta = e;
            p.value = e;
            grid.push_back(p);
        }
    } else {
        throw CliError{int(DPH_E_INVALID), "unknown sweep '" + o.sweep + "'"};
    }

    std::string canon = "cmd=simulate;sweep=" + o.sweep + ";np=" + std::to_string(o.np) +
                        ";alpha1=" + fmt(o.alpha1) + ";alpha2=" + fmt(o.alpha2) +
                        ";gamma=" + fmt(o.gamma) + ";eta=" + fmt(o.eta) +
                        ";s=" + std::to_string(o.s) + ";mc=" + std::to_string(o.mc);
    std::ostringstream csv;
    csv << provenance_line(canon, o.seed);
    csv << "parameter,value,maxE_eps_H,E_eps_H,E_eps_LS,ls_se\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& p = grid[i];
        double bound = 0, general = 0, ls_mean = 0, ls_se = 0;
        check(dph_uniform_error_bound(p.gamma, p.s, p.np, p.a2, &bound), "bound");
        check(dph_uniform_error_general(p.s, p.a1, p.eta, &general), "general error");
        check(dph_ls_error_expected(p.s, p.np, p.a1, p.a2, o.mc, o.seed + i, &ls_mean, &ls_se),
              "ls error");
        csv << o.sweep << ',' << fmt(p.value) << ',' << fmt(bound) << ',' << fmt(general) << ','
            << fmt(ls_mean) << ',' << fmt(ls_se) << "\n";
    }
    write_file(std::filesystem::path(o.out) / "sweep.csv", csv.str());
    std::cout << "simulated sweep=" << o.sweep << " over " << grid.size() << " points\n";
    return 0;
}

struct ClassifyOpts : CommonOpts {
    std::string class_dim;
    std::string features;  // comma-separated names
    std::string source = "exact";
    std::string release;
    std::string method = "uniform";
    std::string test_data;
    std::size_t max_depth = 0;
};

int cmd_classify(const ClassifyOpts& o) {
    auto lp = load_schema_and_data(o.schema, o.data);
    size_t class_dim = 0;
    check(dph_schema_dim_index(lp.schema.get(), o.class_dim.c_str(), &class_dim), "class");
    std::vector<size_t> features;
    for (const auto& name : split(o.features, ',')) {
        if (name.empty()) continue;
        size_t f = 0;
        check(dph_schema_dim_index(lp.schema.get(), name.c_str(), &f), "feature");
        features.push_back(f);
    }

    TreeH tree;
    if (o.source == "exact") {
        check(dph_id3_train_exact(lp.data.get(), features.data(), features.size(), class_dim,
                                  o.max_depth, tree.out()),
              "train");
    } else if (o.source == "release") {
        if (o.release.empty())
            throw CliError{int(DPH_E_INVALID), "--release is required with --source release"};
        ReleaseH rel;
        check(dph_release_from_file(o.release.c_str(), rel.out()), "release");
        check(dph_id3_train_release(rel.get(), o.method.c_str(), features.data(), features.size(),
                                    class_dim, o.max_depth, tree.out()),
              "train");
    } else {
        throw CliError{int(DPH_E_INVALID), "unknown source '" + o.source + "'"};
    }

    char* tjson = nullptr;
    check(dph_tree_to_json(tree.get(), &tjson), "tree json");
    write_file(std::filesystem::path(o.out) / "tree.json", take_string(tjson) + "\n");

    DatasetH test;
    const dph_dataset* eval_data = lp.data.get();
    std::string eval_name = "train";
    if (!o.test_data.empty()) {
        check(dph_dataset_from_csv_file(lp.schema.get(), o.test_data.c_str(), test.out()),
              "test data");
        eval_data = test.get();
        eval_name = "test";
    }
    double acc = 0;
    check(dph_tree_accuracy(tree.get(), eval_data, &acc), "accuracy");

    std::string canon = "cmd=classify;source=" + o.source + ";method=" + o.method +
                        ";class=" + o.class_dim + ";features=" + o.features;
    std::ostringstream csv;
    csv << provenance_line(canon, o.seed);
    csv << "source,method,split,accuracy\n";
    csv << o.source << ',' << (o.source == "exact" ? "-" : o.method) << ',' << eval_name << ','
        << fmt(acc) << "\n";
    write_file(std::filesystem::path(o.out) / "accuracy.csv", csv.str());
    std::cout << "accuracy=" << fmt(acc) << " (" << eval_name << ")\n";
    return 0;
}

struct BlockingOpts {
    std::string release, data, data2, out = ".";
    std::string schema;
};

int cmd_blocking(const BlockingOpts& o) {
    ReleaseH rel;
    check(dph_release_from_file(o.release.c_str(), rel.out()), "release");
    SchemaH schema;
    check(dph_release_schema(rel.get(), schema.out()), "release schema");
    DatasetH a, b;
    check(dph_dataset_from_csv_file(schema.get(), o.data.c_str(), a.out()), "data");
    check(dph_dataset_from_csv_file(schema.get(), o.data2.c_str(), b.out()), "data2");
    size_t k = 0;
    double ratio = 0;
    check(dph_blocking_ratio(rel.get(), a.get(), b.get(), &k, &ratio), "blocking");

    std::uint64_t rel_seed = nlohmann::json::parse(read_file(o.release)).value("seed", std::uint64_t{0});
    std::ostringstream csv;
    csv << provenance_line("cmd=blocking;release=" + o.release + ";data=" + o.data +
                               ";data2=" + o.data2,
                           rel_seed);
    csv << "k,reduction_ratio\n" << k << ',' << fmt(ratio) << "\n";
    write_file(std::filesystem::path(o.out) / "blocking.csv", csv.str());
    std::cout << "blocks=" << k << " reduction_ratio=" << fmt(ratio) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"differentially private histogram release over data cubes"};
    app.require_subcommand(1);

    CommonOpts ingest_o;
    auto* ingest = app.add_subcommand("ingest", "load records into exact cell counts");
    ingest->add_option("--schema", ingest_o.schema, "schema JSON file")->required();
    ingest->add_option("--data", ingest_o.data, "records CSV file")->required();
    ingest->add_option("--out", ingest_o.out, "output directory");

    ReleaseOpts release_o;
    auto* release = app.add_subcommand("release", "produce a private histogram release");
    release->add_option("--schema", release_o.schema)->required();
    release->add_option("--data", release_o.data)->required();
    release->add_option("--strategy", release_o.strategy, "cell | dpcube");
    release->add_option("--alpha", release_o.alpha, "total privacy budget")->required();
    release->add_option("--alpha1", release_o.alpha1, "phase-I budget (default alpha/4)");
    release->add_option("--xi0", release_o.xi0, "variance threshold for splitting");
    release->add_option("--min-cells", release_o.min_cells, "do not split smaller boxes");
    release->add_option("--max-depth", release_o.max_depth, "kd depth cap (0 = auto)");
    release->add_option("--seed", release_o.seed, "noise seed");
    release->add_option("--out", release_o.out, "output directory");

    QueryOpts query_o;
    auto* query = app.add_subcommand("query", "answer range queries from a release");
    query->add_option("--release", query_o.release)->required();
    query->add_option("--queries", query_o.queries, "query CSV (lo_/hi_ bin index pairs)")
        ->required();
    query->add_option("--method", query_o.method, "uniform | ls | cell");
    query->add_option("--out", query_o.out, "output directory");

    EvaluateOpts eval_o;
    auto* evaluate = app.add_subcommand("evaluate", "random-workload error metrics");
    evaluate->add_option("--schema", eval_o.schema)->required();
    evaluate->add_option("--data", eval_o.data)->required();
    evaluate->add_option("--release", eval_o.release)->required();
    evaluate->add_option("--queries", eval_o.queries, "workload size per band");
    evaluate->add_option("--epsilon", eval_o.epsilon, "usefulness tolerance");
    evaluate->add_option("--methods", eval_o.methods, "comma list of uniform,ls,cell");
    evaluate->add_option("--baseline", eval_o.baseline, "external evaluate.csv to merge");
    evaluate->add_option("--seed", eval_o.seed, "workload seed (0 = derived from release)");
    evaluate->add_option("--out", eval_o.out, "output directory");

    SimulateOpts sim_o;
    auto* simulate = app.add_subcommand("simulate", "closed-form/Monte-Carlo error sweeps");
    simulate->add_option("--sweep", sim_o.sweep, "s | alpha1 | np | gamma | eta");
    simulate->add_option("--np", sim_o.np, "partition size in cells");
    simulate->add_option("--alpha1", sim_o.alpha1);
    simulate->add_option("--alpha2", sim_o.alpha2);
    simulate->add_option("--gamma", sim_o.gamma, "smoothness");
    simulate->add_option("--eta", sim_o.eta, "observed inconsistency");
    simulate->add_option("--s", sim_o.s, "query size in cells");
    simulate->add_option("--mc", sim_o.mc, "Monte-Carlo draws");
    simulate->add_option("--seed", sim_o.seed);
    simulate->add_option("--out", sim_o.out, "output directory");

    ClassifyOpts cls_o;
    auto* classify = app.add_subcommand("classify", "train an ID3 tree on counts");
    classify->add_option("--schema", cls_o.schema)->required();
    classify->add_option("--data", cls_o.data)->required();
    classify->add_option("--class", cls_o.class_dim, "class attribute name")->required();
    classify->add_option("--features", cls_o.features, "comma list of attribute names")
        ->required();
    classify->add_option("--source", cls_o.source, "exact | release");
    classify->add_option("--release", cls_o.release, "release JSON (with --source release)");
    classify->add_option("--method", cls_o.method, "training counts: cell | ls | uniform");
    classify->add_option("--test-data", cls_o.test_data, "held-out records CSV");
    classify->add_option("--max-depth", cls_o.max_depth, "tree depth cap (0 = #features)");
    classify->add_option("--seed", cls_o.seed);
    classify->add_option("--out", cls_o.out, "output directory");

    BlockingOpts blk_o;
    auto* blocking = app.add_subcommand("blocking", "block two datasets by the release partition");
    blocking->add_option("--release", blk_o.release)->required();
    blocking->add_option("--data", blk_o.data)->required();
    blocking->add_option("--data2", blk_o.data2)->required();
    blocking->add_option("--out", blk_o.out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) return cmd_ingest(ingest_o);
        if (release->parsed()) return cmd_release(release_o);
        if (query->parsed()) return cmd_query(query_o);
        if (evaluate->parsed()) return cmd_evaluate(eval_o);
        if (simulate->parsed()) return cmd_simulate(sim_o);
        if (classify->parsed()) return cmd_classify(cls_o);
        if (blocking->parsed()) return cmd_blocking(blk_o);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code == 0 ? 1 : e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
