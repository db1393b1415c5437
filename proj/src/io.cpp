#include "qmeta/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmeta/error.hpp"

namespace qmeta {

std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

void write_meta(std::ostream& out, const Metadata& meta) {
  out << '#';
  for (const auto& [k, v] : meta) out << ' ' << k << '=' << v;
  out << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

void write_csv(const std::string& path, const Metadata& meta, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_out(path);
  write_meta(out, meta);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt(row[i]);
    out << '\n';
  }
}

CsvData read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  CsvData data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      data.comments.push_back(line.substr(1));
      continue;
    }
    if (data.header.empty()) {
      data.header = split(line);
      continue;
    }
    std::vector<double> row;
    for (const std::string& cell : split(line)) {
      double x = 0.0;
      const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (ec != std::errc() || p != cell.data() + cell.size())
        throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      row.push_back(x);
    }
    if (row.size() != data.header.size())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": wrong column count");
    data.rows.push_back(std::move(row));
  }
  return data;
}

void write_state(const std::string& path, const SimState& s, const Metadata& meta) {
  Metadata m = meta;
  m.emplace_back("t", fmt(s.t));
  std::vector<std::vector<double>> rows;
  rows.reserve(s.c0.size());
  for (std::size_t j = 0; j < s.c0.size(); ++j)
    rows.push_back({static_cast<double>(j), s.c0[j].real(), s.c0[j].imag(), s.c1[j].real(),
                    s.c1[j].imag()});
  write_csv(path, m, {"n", "re_c0", "im_c0", "re_c1", "im_c1"}, rows);
}

Register read_state(const std::string& path) {
  const CsvData data = read_csv(path);
  if (data.header != std::vector<std::string>{"n", "re_c0", "im_c0", "re_c1", "im_c1"})
    throw ConfigError(path + ": not a register file (header n,re_c0,im_c0,re_c1,im_c1)");
  if (data.rows.empty()) throw ConfigError(path + ": empty register");
  Register reg;
  for (std::size_t j = 0; j < data.rows.size(); ++j) {
    const auto& r = data.rows[j];
    if (r[0] != static_cast<double>(j)) throw ConfigError(path + ": site indices must run 0,1,2,...");
    reg.c0.emplace_back(r[1], r[2]);
    reg.c1.emplace_back(r[3], r[4]);
  }
  for (const std::string& c : data.comments) {
    const auto pos = c.rfind(" t=");
    if (pos != std::string::npos) reg.t = std::stod(c.substr(pos + 3));
  }
  return reg;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory '" + dir + "': " + ec.message());
}

}  // namespace qmeta
