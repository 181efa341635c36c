#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rds/estimators.hpp"
#include "rds/graph.hpp"
#include "rds/netgen.hpp"
#include "rds/rds_sim.hpp"

namespace rds {

/// Malformed input; `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct LoadedGraph {
    Graph graph;
    std::vector<std::string> ids;  // external id of each vertex index
    CleaningReport cleaning;
};

/// Whitespace-separated pairs, one per line; blank lines and lines starting
/// with '#' are skipped. Vertex indices follow first appearance.
LoadedGraph read_edge_list(std::istream& in);
LoadedGraph read_edge_list(const std::filesystem::path& path);

/// Convenience overload on already tokenised pairs.
LoadedGraph from_edge_list(std::span<const std::pair<std::string, std::string>> edges);

/// Writes "u v" per edge with u < v. Uses `ids` when given, else indices.
void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::string> ids = {});

/// Writes `id,<name>` then one row per vertex.
void write_traits(std::ostream& out, std::span<const std::uint8_t> traits, const std::string& name,
                  std::span<const std::string> ids = {});

struct TraitTable {
    std::string name;
    std::vector<std::uint8_t> values;  // indexed like the graph
};

/// Reads a trait CSV and aligns it with `ids`. Every graph vertex must have a
/// value; rows for unknown ids are errors.
TraitTable read_traits(std::istream& in, std::span<const std::string> ids);

struct SampleFile {
    RdsSample sample;
    std::vector<std::string> ids;  // Respondent::id indexes this table
};

void write_sample_csv(std::ostream& out, const RdsSample& s, std::span<const std::string> ids = {});
SampleFile read_sample_csv(std::istream& in);

nlohmann::json to_json(const EstimateReport& r);
nlohmann::json to_json(const GenerationReport& r);

/// Opens for writing or throws std::runtime_error naming the path.
std::ofstream open_output(const std::filesystem::path& path);
std::ifstream open_input(const std::filesystem::path& path);

}  // namespace rds
