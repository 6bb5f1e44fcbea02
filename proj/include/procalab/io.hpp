#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "procalab/errors.hpp"
#include "procalab/grid.hpp"

namespace procalab {

/// 17 significant digits, '.' decimal point: round-trips every double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv_row(std::ostream& out, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << format_double(row[i]);
  }
  out << '\n';
}

/// Snapshot layout: a text header of `key = value` lines terminated by
/// `end_header`, then the ten component arrays Ex Ey Ez Bx By Bz Ax Ay Az φ
/// one after another as little-endian float64, x index fastest.
struct SnapshotHeader {
  std::string version;
  std::string config_hash;
  Grid grid;
  double time = 0.0;
  double mu = 0.0;
};

inline constexpr const char* kSnapshotMagic = "procalab-snapshot 1";
inline constexpr const char* kSnapshotFields = "Ex Ey Ez Bx By Bz Ax Ay Az phi";

namespace detail {

inline void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

inline double get_le(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw PreconditionError("snapshot truncated");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace detail

inline void write_snapshot(std::ostream& out, const EMFieldState& s, const SnapshotHeader& h) {
  s.validate();
  const Grid& g = s.grid;
  out << kSnapshotMagic << '\n';
  out << "version = " << h.version << '\n';
  out << "config_hash = " << h.config_hash << '\n';
  out << "dims = " << g.extents[0] << ' ' << g.extents[1] << ' ' << g.extents[2] << '\n';
  out << "active_dims = " << g.active_dims << '\n';
  out << "spacing = " << format_double(g.spacing[0]) << ' ' << format_double(g.spacing[1]) << ' '
      << format_double(g.spacing[2]) << '\n';
  out << "time = " << format_double(h.time) << '\n';
  out << "mu = " << format_double(h.mu) << '\n';
  out << "fields = " << kSnapshotFields << '\n';
  out << "encoding = float64-le x-fastest\n";
  out << "end_header\n";
  for (const auto* c : s.components())
    for (double v : *c) detail::put_le(out, v);
}

inline EMFieldState read_snapshot(std::istream& in, SnapshotHeader* header_out = nullptr) {
  std::string line;
  if (!std::getline(in, line) || line != kSnapshotMagic) throw PreconditionError("not a procalab snapshot");
  SnapshotHeader h;
  bool have_dims = false, have_spacing = false;
  std::size_t active = 0;
  while (std::getline(in, line) && line != "end_header") {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw PreconditionError("malformed snapshot header line: " + line);
    const std::string key = line.substr(0, eq);
    std::istringstream val(line.substr(eq + 3));
    val.imbue(std::locale::classic());
    if (key == "version") h.version = val.str();
    else if (key == "config_hash") h.config_hash = val.str();
    else if (key == "dims") have_dims = static_cast<bool>(val >> h.grid.extents[0] >> h.grid.extents[1] >> h.grid.extents[2]);
    else if (key == "active_dims") val >> active;
    else if (key == "spacing") have_spacing = static_cast<bool>(val >> h.grid.spacing[0] >> h.grid.spacing[1] >> h.grid.spacing[2]);
    else if (key == "time") val >> h.time;
    else if (key == "mu") val >> h.mu;
    else if (key == "fields" && val.str() != kSnapshotFields) throw PreconditionError("unexpected snapshot field order");
  }
  if (line != "end_header" || !have_dims || !have_spacing || active < 1 || active > 3)
    throw PreconditionError("incomplete snapshot header");
  h.grid.active_dims = active;

  EMFieldState s = EMFieldState::zeros(h.grid);
  for (auto* c : s.components())
    for (double& v : *c) v = detail::get_le(in);
  if (header_out) *header_out = h;
  return s;
}

}  // namespace procalab
