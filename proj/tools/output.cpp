#include "output.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#ifndef NONKP_GIT_DESCRIBE
#define NONKP_GIT_DESCRIBE "unknown"
#endif

namespace nonkp::cli {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::little) return bits;
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out |= ((bits >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return out;
}

void append_le(std::vector<char>& buf, double x) {
  const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(x));
  char bytes[8];
  std::memcpy(bytes, &bits, 8);
  buf.insert(buf.end(), bytes, bytes + 8);
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("csv row width does not match header");
  rows_.push_back(std::move(cells));
  return *this;
}

void CsvTable::write(const std::filesystem::path& path) const {
  auto out = open_for_write(path);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  auto out = open_for_write(path);
  out << value.dump(2) << '\n';
}

std::string build_identifier() { return NONKP_GIT_DESCRIBE; }

void write_snapshot(const std::filesystem::path& dir, const std::string& stem, const StateUV& s, Scheme scheme) {
  const Grid2D& g = s.u.grid();
  const PhysicalField u = inverse_transform(s.u);
  const PhysicalField v = inverse_transform(s.v);
  std::vector<char> buf;
  buf.reserve(16 * g.size());
  for (double x : u.values) append_le(buf, x);
  for (double x : v.values) append_le(buf, x);
  auto bin = open_for_write(dir / (stem + ".bin"), std::ios::binary);
  bin.write(buf.data(), static_cast<std::streamsize>(buf.size()));

  nlohmann::json meta;
  meta["grid"] = {{"Nx", g.nx()}, {"Ny", g.ny()}, {"Lx", g.lx()}, {"Ly", g.ly()}};
  meta["t"] = s.t;
  meta["scheme"] = to_string(scheme);
  meta["git_describe"] = build_identifier();
  meta["data"] = stem + ".bin";
  meta["fields"] = {"u", "v"};
  meta["dtype"] = "float64-le";
  meta["layout"] = "row-major, y outer, x inner";
  write_json(dir / (stem + ".json"), meta);
}

std::pair<std::vector<double>, std::vector<double>> read_snapshot_data(const std::filesystem::path& bin, int nx,
                                                                         int ny) {
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + bin.string() + "'");
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  std::vector<double> all(2 * n);
  for (auto& x : all) {
    std::uint64_t bits = 0;
    in.read(reinterpret_cast<char*>(&bits), 8);
    x = std::bit_cast<double>(to_little_endian(bits));
  }
  if (!in) throw std::runtime_error("snapshot data '" + bin.string() + "' is truncated");
  return {{all.begin(), all.begin() + n}, {all.begin() + n, all.end()}};
}

}  // namespace nonkp::cli
