// C API of the shared library: thin handle/error-code wrappers over the core.

#include "dphist/dphist.h"

#include <cstring>
#include <sstream>
#include <string>

#include "analysis.hpp"
#include "apps.hpp"
#include "cube.hpp"
#include "estimate.hpp"
#include "io.hpp"
#include "noise.hpp"
#include "partition.hpp"
#include "workload.hpp"

using namespace dphist;

struct dph_schema {
    CubeSchema s;
};
struct dph_dataset {
    CubeSchema schema;
    std::vector<Record> records;
    CellVector counts;
};
struct dph_release {
    ReleasedHistogram h;
    std::vector<ChargeEntry> log;
};
struct dph_workload {
    CubeSchema schema;
    std::vector<LinearQuery> queries;
};
struct dph_tree {
    DecisionTree t;
};

namespace {

thread_local std::string g_last_error;

dph_status fail(dph_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

// runs fn() and maps exceptions onto status codes
template <class Fn>
dph_status guarded(Fn&& fn) {
    try {
        fn();
        return DPH_OK;
    } catch (const BudgetExhausted& e) {
        return fail(DPH_E_BUDGET, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(DPH_E_PARSE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(DPH_E_INVALID, e.what());
    } catch (const std::exception& e) {
        return fail(DPH_E_INTERNAL, e.what());
    }
}

dph_status need(bool ok, const char* what) {
    return ok ? DPH_OK : fail(DPH_E_INVALID, std::string("null ") + what);
}

// failures while decoding a document (JSON/CSV text or file content) are
// parse errors to the caller, whatever exception type the decoder used
dph_status as_parse(dph_status st) { return st == DPH_E_INVALID ? DPH_E_PARSE : st; }

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

PartitionBox box_from(const CubeSchema& s, const size_t* lo, const size_t* hi) {
    PartitionBox b;
    b.lo.assign(lo, lo + s.ndims());
    b.hi.assign(hi, hi + s.ndims());
    return b;
}

}  // namespace

extern "C" {

const char* dph_version(void) { return "1.0.0"; }

const char* dph_last_error(void) { return g_last_error.c_str(); }

void dph_string_free(char* s) { delete[] s; }

/* ---- schema ---- */

dph_status dph_schema_from_json(const char* json_text, dph_schema** out) {
    if (auto st = need(json_text && out, "argument")) return st;
    return as_parse(guarded([&] {
        auto j = nlohmann::json::parse(json_text);
        *out = new dph_schema{schema_from_json(j)};
    }));
}

dph_status dph_schema_from_file(const char* path, dph_schema** out) {
    if (auto st = need(path && out, "argument")) return st;
    auto st = guarded([&] { *out = new dph_schema{schema_from_file(path)}; });
    if (st != DPH_OK && g_last_error.find("cannot open") != std::string::npos) return DPH_E_IO;
    return as_parse(st);
}

dph_status dph_schema_to_json(const dph_schema* s, char** out_json) {
    if (auto st = need(s && out_json, "argument")) return st;
    return guarded([&] { *out_json = dup_string(schema_to_json(s->s).dump(2)); });
}

void dph_schema_free(dph_schema* s) { delete s; }

dph_status dph_schema_ndims(const dph_schema* s, size_t* out) {
    if (auto st = need(s && out, "argument")) return st;
    *out = s->s.ndims();
    return DPH_OK;
}

dph_status dph_schema_cells(const dph_schema* s, size_t* out) {
    if (auto st = need(s && out, "argument")) return st;
    *out = s->s.cell_count();
    return DPH_OK;
}

dph_status dph_schema_dim_size(const dph_schema* s, size_t dim, size_t* out) {
    if (auto st = need(s && out, "argument")) return st;
    if (dim >= s->s.ndims()) return fail(DPH_E_INVALID, "dimension index out of range");
    *out = s->s.dims[dim].size();
    return DPH_OK;
}

dph_status dph_schema_dim_name(const dph_schema* s, size_t dim, char** out) {
    if (auto st = need(s && out, "argument")) return st;
    if (dim >= s->s.ndims()) return fail(DPH_E_INVALID, "dimension index out of range");
    *out = dup_string(s->s.dims[dim].name);
    return DPH_OK;
}

dph_status dph_schema_dim_index(const dph_schema* s, const char* name, size_t* out) {
    if (auto st = need(s && name && out, "argument")) return st;
    return guarded([&] { *out = s->s.dim_index(name); });
}

/* ---- dataset ---- */

dph_status dph_dataset_from_csv(const dph_schema* s, const char* csv_text, dph_dataset** out) {
    if (auto st = need(s && csv_text && out, "argument")) return st;
    return as_parse(guarded([&] {
        std::istringstream in{std::string(csv_text)};
        auto records = records_from_csv(in, s->s);
        auto counts = ingest(s->s, records);
        *out = new dph_dataset{s->s, std::move(records), std::move(counts)};
    }));
}

dph_status dph_dataset_from_csv_file(const dph_schema* s, const char* path, dph_dataset** out) {
    if (auto st = need(s && path && out, "argument")) return st;
    auto st = guarded([&] {
        auto records = records_from_csv_file(path, s->s);
        auto counts = ingest(s->s, records);
        *out = new dph_dataset{s->s, std::move(records), std::move(counts)};
    });
    if (st != DPH_OK && g_last_error.find("cannot open") != std::string::npos) return DPH_E_IO;
    return as_parse(st);
}

void dph_dataset_free(dph_dataset* d) { delete d; }

dph_status dph_dataset_rows(const dph_dataset* d, size_t* out) {
    if (auto st = need(d && out, "argument")) return st;
    *out = d->records.size();
    return DPH_OK;
}

dph_status dph_dataset_counts(const dph_dataset* d, double* counts) {
    if (auto st = need(d && counts, "argument")) return st;
    std::memcpy(counts, d->counts.data(), d->counts.size() * sizeof(double));
    return DPH_OK;
}

dph_status dph_dataset_true_answer(const dph_dataset* d, const size_t* lo, const size_t* hi,
                                   double* out) {
    if (auto st = need(d && lo && hi && out, "argument")) return st;
    return guarded([&] {
        *out = evaluate_query(d->schema, d->counts, box_from(d->schema, lo, hi));
    });
}

/* ---- release ---- */

dph_status dph_release_cell(const dph_dataset* d, double alpha, uint64_t seed, dph_release** out) {
    if (auto st = need(d && out, "argument")) return st;
    return guarded([&] {
        BudgetLedger ledger(alpha);
        NoiseSource src(seed);
        auto h = release_cell(d->schema, d->counts, PrivacyParam(alpha), ledger, src, seed);
        *out = new dph_release{std::move(h), ledger.log()};
    });
}

dph_status dph_release_dpcube(const dph_dataset* d, double alpha, double alpha1, double xi0,
                              size_t min_cells, size_t max_depth, uint64_t seed,
                              dph_release** out) {
    if (auto st = need(d && out, "argument")) return st;
    return guarded([&] {
        if (!(alpha > 0)) throw std::invalid_argument("alpha must be > 0");
        if (alpha1 <= 0) alpha1 = alpha / 4;  // default budget split
        if (!(alpha1 < alpha))
            throw std::invalid_argument("alpha1 must lie strictly inside (0, alpha)");
        KdParams kd{xi0, min_cells == 0 ? 1 : min_cells, max_depth};
        BudgetLedger ledger(alpha);
        NoiseSource src(seed);
        auto h = release_dpcube(d->schema, d->counts, alpha1, alpha - alpha1, kd, ledger, src, seed);
        *out = new dph_release{std::move(h), ledger.log()};
    });
}

void dph_release_free(dph_release* r) { delete r; }

dph_status dph_release_to_json(const dph_release* r, char** out_json) {
    if (auto st = need(r && out_json, "argument")) return st;
    return guarded([&] { *out_json = dup_string(release_to_json(r->h).dump(2)); });
}

dph_status dph_release_from_json(const char* json_text, dph_release** out) {
    if (auto st = need(json_text && out, "argument")) return st;
    return as_parse(guarded([&] {
        auto j = nlohmann::json::parse(json_text);
        *out = new dph_release{release_from_json(j), {}};
    }));
}

dph_status dph_release_from_file(const char* path, dph_release** out) {
    if (auto st = need(path && out, "argument")) return st;
    auto st = guarded([&] { *out = new dph_release{release_from_file(path), {}}; });
    if (st != DPH_OK && g_last_error.find("cannot open") != std::string::npos) return DPH_E_IO;
    return as_parse(st);
}

dph_status dph_release_ledger_jsonl(const dph_release* r, char** out) {
    if (auto st = need(r && out, "argument")) return st;
    return guarded([&] { *out = dup_string(ledger_to_jsonl(r->log)); });
}

dph_status dph_release_schema(const dph_release* r, dph_schema** out) {
    if (auto st = need(r && out, "argument")) return st;
    *out = new dph_schema{r->h.schema};
    return DPH_OK;
}

dph_status dph_release_box_count(const dph_release* r, size_t* out) {
    if (auto st = need(r && out, "argument")) return st;
    *out = r->h.boxes.size();
    return DPH_OK;
}

dph_status dph_release_alphas(const dph_release* r, double* out_alpha1, double* out_alpha2) {
    if (auto st = need(r && out_alpha1 && out_alpha2, "argument")) return st;
    *out_alpha1 = r->h.alpha1;
    *out_alpha2 = r->h.alpha2;
    return DPH_OK;
}

/* ---- estimation ---- */

dph_status dph_estimate(const dph_release* r, const char* method, const size_t* lo,
                        const size_t* hi, double* out) {
    if (auto st = need(r && method && lo && hi && out, "argument")) return st;
    return guarded([&] {
        *out = estimate(r->h, box_from(r->h.schema, lo, hi), method_from_string(method));
    });
}

/* ---- workload ---- */

dph_status dph_workload_generate(const dph_schema* s, size_t count, uint64_t seed, size_t min_size,
                                 size_t max_size, dph_workload** out) {
    if (auto st = need(s && out, "argument")) return st;
    return guarded([&] {
        WorkloadParams p{count, seed, min_size, max_size};
        *out = new dph_workload{s->s, generate_workload(s->s, p)};
    });
}

void dph_workload_free(dph_workload* w) { delete w; }

dph_status dph_workload_count(const dph_workload* w, size_t* out) {
    if (auto st = need(w && out, "argument")) return st;
    *out = w->queries.size();
    return DPH_OK;
}

dph_status dph_workload_query(const dph_workload* w, size_t i, size_t* lo, size_t* hi,
                              size_t* out_cells) {
    if (auto st = need(w && lo && hi, "argument")) return st;
    if (i >= w->queries.size()) return fail(DPH_E_INVALID, "query index out of range");
    const auto& q = w->queries[i];
    for (std::size_t d = 0; d < q.lo.size(); ++d) {
        lo[d] = q.lo[d];
        hi[d] = q.hi[d];
    }
    if (out_cells) *out_cells = q.cell_count();
    return DPH_OK;
}

dph_status dph_eval_avg_abs_error(const dph_dataset* d, const dph_release* r,
                                  const dph_workload* w, const char* method, double* out) {
    if (auto st = need(d && r && w && method && out, "argument")) return st;
    return guarded([&] {
        *out = avg_abs_error(d->schema, d->counts, r->h, w->queries, method_from_string(method));
    });
}

dph_status dph_eval_usefulness(const dph_dataset* d, const dph_release* r, const dph_workload* w,
                               const char* method, double eps, double* out) {
    if (auto st = need(d && r && w && method && out, "argument")) return st;
    return guarded([&] {
        *out = empirical_usefulness(d->schema, d->counts, r->h, w->queries,
                                    method_from_string(method), eps);
    });
}

dph_status dph_weighted_variance(const dph_dataset* d, const dph_release* r, double* out) {
    if (auto st = need(d && r && out, "argument")) return st;
    return guarded([&] {
        if (r->h.boxes.empty())
            throw std::invalid_argument("weighted variance needs a release with subcube boxes");
        *out = weighted_variance(d->schema, d->counts, r->h.box_list());
    });
}

/* ---- analysis ---- */

dph_status dph_laplace_sum_tail_bound(size_t m, double b, double eps, double* out) {
    if (auto st = need(out != nullptr, "argument")) return st;
    return guarded([&] { *out = laplace_sum_tail_bound(m, b, eps); });
}

dph_status dph_cell_usefulness_alpha(size_t m, double delta, double eps, double* out) {
    if (auto st = need(out != nullptr, "argument")) return st;
    return guarded([&] { *out = cell_usefulness_alpha(m, delta, eps); });
}

dph_status dph_bilateral_gamma_pdf(size_t n, double alpha, double z, double* out) {
    if (auto st = need(out != nullptr, "argument")) return st;
    return guarded([&] { *out = bilateral_gamma_pdf(n, alpha, z); });
}

dph_status dph_uniform_usefulness_check(double gamma, size_t s, size_t np, double alpha2,
                                        double eps, double delta, int* out) {
    if (auto st = need(out != nullptr, "argument")) return st;
    return guarded([&] { *out = uniform_usefulness_check(gamma, s, np, alpha2, eps, delta); });
}

dph_status dph_uniform_error_bound(double gamma, size_t s, size_t np, double alpha2, double* out) {
    if (auto st = need(out != nullptr, "argument")) return st;
    return guarded([&] { *out = uniform_error_bound(gamma, s, np, alpha2); });
}

dph_status dph_uniform_error_general(size_t s, double alpha1, double eta, double* out) {
    if (auto st = need(out != nullptr, "argument")) return st;
    return guarded([&] { *out = uniform_error_general(s, alpha1, eta); });
}

dph_status dph_ls_error_expected(size_t s, size_t np, double alpha1, double alpha2, size_t mc,
                                 uint64_t seed, double* out_mean, double* out_se) {
    if (auto st = need(out_mean && out_se, "argument")) return st;
    return guarded([&] {
        auto r = ls_error_expected(s, np, alpha1, alpha2, mc, seed);
        *out_mean = r.mean;
        *out_se = r.se;
    });
}

/* ---- ID3 ---- */

dph_status dph_id3_train_exact(const dph_dataset* d, const size_t* features, size_t n_features,
                               size_t class_dim, size_t max_depth, dph_tree** out) {
    if (auto st = need(d && features && out, "argument")) return st;
    return guarded([&] {
        Id3Params p{{features, features + n_features}, class_dim, max_depth};
        *out = new dph_tree{train_id3(d->schema, d->counts, p)};
    });
}

dph_status dph_id3_train_release(const dph_release* r, const char* method, const size_t* features,
                                 size_t n_features, size_t class_dim, size_t max_depth,
                                 dph_tree** out) {
    if (auto st = need(r && method && features && out, "argument")) return st;
    return guarded([&] {
        Id3Params p{{features, features + n_features}, class_dim, max_depth};
        auto counts = training_counts(r->h, method_from_string(method));
        *out = new dph_tree{train_id3(r->h.schema, counts, p)};
    });
}

void dph_tree_free(dph_tree* t) { delete t; }

dph_status dph_tree_to_json(const dph_tree* t, char** out_json) {
    if (auto st = need(t && out_json, "argument")) return st;
    return guarded([&] { *out_json = dup_string(tree_to_json(t->t).dump(2)); });
}

dph_status dph_tree_accuracy(const dph_tree* t, const dph_dataset* d, double* out) {
    if (auto st = need(t && d && out, "argument")) return st;
    return guarded([&] { *out = accuracy(t->t, d->records); });
}

/* ---- blocking ---- */

dph_status dph_blocking_ratio(const dph_release* r, const dph_dataset* a, const dph_dataset* b,
                              size_t* out_blocks, double* out_ratio) {
    if (auto st = need(r && a && b && out_ratio, "argument")) return st;
    return guarded([&] {
        double ratio = blocking_reduction_ratio(r->h, a->records, b->records);
        if (out_blocks) *out_blocks = r->h.boxes.size();
        *out_ratio = ratio;
    });
}

/* ---- misc ---- */

dph_status dph_config_hash64(const char* text, uint64_t* out) {
    if (auto st = need(text && out, "argument")) return st;
    *out = config_hash64(text);
    return DPH_OK;
}

}  // extern "C"
