#pragma once

#include "json.hpp"
#include <string>
#include <utility>
#include <vector>

#include "qmeta/model.hpp"

namespace qmeta {

using Metadata = std::vector<std::pair<std::string, std::string>>;

// Shortest decimal form that round-trips.
std::string fmt(double x);

// One '#' metadata line, a header row, then comma-separated rows.
void write_csv(const std::string& path, const Metadata& meta, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct CsvData {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvData read_csv(const std::string& path);

// Register as rows (n, Re c0, Im c0, Re c1, Im c1), n counting active sites from 0.
void write_state(const std::string& path, const SimState& s, const Metadata& meta);

struct Register {
  std::vector<cplx> c0;
  std::vector<cplx> c1;
  double t = 0.0;
};

Register read_state(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);

// Creates the directory (and parents) if needed.
void ensure_dir(const std::string& dir);

}  // namespace qmeta
