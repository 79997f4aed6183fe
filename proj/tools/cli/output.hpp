#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "laserent/fock.hpp"

namespace laserent::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Shortest-stable text form used in every CSV cell: %.12g, "nan", "inf", "-inf".
std::string format_number(double v);

/// Number, or null when not finite.
Json json_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
  /// Keeps only the named columns, in the requested order. Throws DomainError
  /// for an unknown name.
  CsvTable select(const std::vector<std::string>& columns) const;
};

void write_json(std::ostream& out, const Json& j);

/// Distribution as CSV (n,prob), gnuplot .dat, or JSON with metadata; the
/// format follows the file extension.
void write_distribution_file(const std::string& path, const fock::FockDistribution& d,
                             const Json& params, double truncation_tolerance);

std::vector<std::string> split(const std::string& s, char sep);

/// "start:stop:steps" with steps >= 2 and start < stop, expanded inclusively.
std::vector<double> parse_range(const std::string& spec);

}  // namespace laserent::cli
