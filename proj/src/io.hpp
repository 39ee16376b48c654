#pragma once
// Serialization: schema JSON, record CSV, release JSON, query CSV, ledger
// JSONL, decision-tree JSON. All output is deterministic for a given input
// (sorted JSON keys, shortest round-trip number formatting).

#include <iosfwd>
#include <string>
#include <vector>

#include "apps.hpp"
#include "cube.hpp"
#include "noise.hpp"
#include "partition.hpp"

#include <json.hpp>

namespace dphist {

// shortest decimal form that parses back to the same double
std::string fmt_double(double v);

// FNV-1a 64-bit over a canonical config string
std::uint64_t config_hash64(const std::string& text);
std::string hash_hex(std::uint64_t h);

nlohmann::json schema_to_json(const CubeSchema& schema);
CubeSchema schema_from_json(const nlohmann::json& j);
CubeSchema schema_from_file(const std::string& path);

// CSV with a header row naming the attributes; columns may appear in any
// order but must cover the schema exactly. Cells are raw values (labels for
// categorical attributes, numbers for edge-binned ones).
std::vector<Record> records_from_csv(std::istream& in, const CubeSchema& schema);
std::vector<Record> records_from_csv_file(const std::string& path, const CubeSchema& schema);

nlohmann::json release_to_json(const ReleasedHistogram& h);
ReleasedHistogram release_from_json(const nlohmann::json& j);
ReleasedHistogram release_from_file(const std::string& path);

std::string ledger_to_jsonl(const std::vector<ChargeEntry>& log);

// Query CSV: header "lo_<attr>,hi_<attr>,..." in schema order, one inclusive
// bin range pair per dimension per row.
std::vector<LinearQuery> queries_from_csv(std::istream& in, const CubeSchema& schema);
std::string queries_to_csv(const CubeSchema& schema, const std::vector<LinearQuery>& qs);

nlohmann::json tree_to_json(const DecisionTree& tree);

}  // namespace dphist
