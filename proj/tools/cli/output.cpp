#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "laserent/errors.hpp"

namespace laserent::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

CsvTable CsvTable::select(const std::vector<std::string>& columns) const {
  std::vector<std::size_t> idx;
  for (const auto& c : columns) {
    std::size_t i = 0;
    while (i < header.size() && header[i] != c) ++i;
    if (i == header.size()) throw DomainError("unknown output column '" + c + "'");
    idx.push_back(i);
  }
  CsvTable t;
  for (auto i : idx) t.header.push_back(header[i]);
  for (const auto& r : rows) {
    std::vector<std::string> cells;
    for (auto i : idx) cells.push_back(r[i]);
    t.rows.push_back(std::move(cells));
  }
  return t;
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_distribution_file(const std::string& path, const fock::FockDistribution& d,
                             const Json& params, double truncation_tolerance) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "' for writing");
  const auto p = d.probs();
  if (ends_with(path, ".json")) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = params;
    j["truncation"] = {{"tolerance", truncation_tolerance},
                       {"n_max", d.n_max()},
                       {"tail_mass_bound", json_number(d.tail_mass_bound())}};
    Json probs = Json::array();
    for (double v : p) probs.push_back(v);
    j["prob"] = std::move(probs);
    write_json(f, j);
  } else if (ends_with(path, ".dat")) {
    f << "# n prob\n";
    for (std::size_t n = 0; n < p.size(); ++n) f << n << ' ' << format_number(p[n]) << '\n';
  } else if (ends_with(path, ".csv")) {
    f << "n,prob\n";
    for (std::size_t n = 0; n < p.size(); ++n) f << n << ',' << format_number(p[n]) << '\n';
  } else {
    throw DomainError("distribution file '" + path + "' must end in .csv, .json or .dat");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> parse_range(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw DomainError("range '" + spec + "' must be start:stop:steps");
  double start = 0.0, stop = 0.0;
  long steps = 0;
  try {
    std::size_t used = 0;
    start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    steps = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::logic_error&) {
    throw DomainError("range '" + spec + "' is not numeric");
  }
  if (steps < 2) throw DomainError("range '" + spec + "' needs at least 2 steps");
  if (!(start < stop)) throw DomainError("range '" + spec + "' needs start < stop");
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) {
    v[static_cast<std::size_t>(i)] =
        i == steps - 1 ? stop : start + (stop - start) * static_cast<double>(i) / (steps - 1);
  }
  return v;
}

}  // namespace laserent::cli
