#pragma once

#include "metamap/graph.hpp"
#include "metamap/map.hpp"
#include "metamap/metrics.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace metamap {

/// Malformed or semantically invalid file content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kGraphFormat = "metamap-graph";
inline constexpr std::string_view kMapFormat = "metamap-map";
inline constexpr int kFormatVersion = 1;

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

std::string graph_to_text(const WeightedPlaneGraph& g);
/// Parses and validates a GraphFile. Field errors name the offending entry.
WeightedPlaneGraph graph_from_text(std::string_view text);

std::string map_to_text(const MetaphoricalMap& m);
/// Parses a MapFile; point ids are renumbered densely in file order.
MetaphoricalMap map_from_text(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

WeightedPlaneGraph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const WeightedPlaneGraph& g);
MetaphoricalMap load_map(const std::filesystem::path& path);
void save_map(const std::filesystem::path& path, const MetaphoricalMap& m);

std::string report_to_text(const QualityReport& report);

}  // namespace metamap
