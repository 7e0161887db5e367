#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "landau/diagnostics.hpp"
#include "landau/field.hpp"

namespace landau {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Binary field dump. Header: magic "LNDFLD01" (8 bytes), u64 n, f64 V,
// f64 gamma, f64 time; payload: n^3 little-endian doubles, row-major with v1
// fastest (the in-memory layout).
inline constexpr char kFieldMagic[8] = {'L', 'N', 'D', 'F', 'L', 'D', '0', '1'};

struct FieldDump {
  DistributionField field;
  double gamma = 0;
  double time = 0;
};

inline void write_field_dump(const std::string& path, const DistributionField& f, double gamma,
                             double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("write_field_dump: cannot open " + path);
  os.write(kFieldMagic, 8);
  const std::uint64_t n = static_cast<std::uint64_t>(f.grid.n);
  const double v = f.grid.half_width;
  os.write(reinterpret_cast<const char*>(&n), 8);
  os.write(reinterpret_cast<const char*>(&v), 8);
  os.write(reinterpret_cast<const char*>(&gamma), 8);
  os.write(reinterpret_cast<const char*>(&time), 8);
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!os) throw IoError("write_field_dump: short write to " + path);
}

inline FieldDump read_field_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("read_field_dump: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kFieldMagic, 8) != 0)
    throw IoError("read_field_dump: bad magic in " + path);
  std::uint64_t n = 0;
  double v = 0, gamma = 0, time = 0;
  is.read(reinterpret_cast<char*>(&n), 8);
  is.read(reinterpret_cast<char*>(&v), 8);
  is.read(reinterpret_cast<char*>(&gamma), 8);
  is.read(reinterpret_cast<char*>(&time), 8);
  FieldDump out;
  out.field.grid = VelocityGrid::make(static_cast<int>(n), v);
  out.field.values.resize(out.field.grid.size());
  is.read(reinterpret_cast<char*>(out.field.values.data()),
          static_cast<std::streamsize>(out.field.values.size() * sizeof(double)));
  if (!is) throw IoError("read_field_dump: truncated payload in " + path);
  out.gamma = gamma;
  out.time = time;
  return out;
}

// CSV schema, one row per record:
// t, M, E, H, K_hat, undershoot, H^m_gamma columns for m = 0..m_max,
// analytic-norm columns per configured c0, gevrey_c, gevrey_r2
inline std::string csv_header(int m_max, const std::vector<double>& c0_list) {
  std::string h = "t,M,E,H,K_hat,undershoot";
  for (int m = 0; m <= m_max; ++m) h += ",H" + std::to_string(m) + "_gamma";
  for (double c0 : c0_list) {
    char buf[40];
    std::snprintf(buf, sizeof buf, ",analytic_c%g", c0);
    h += buf;
  }
  h += ",gevrey_c,gevrey_r2";
  return h;
}

inline void write_csv_row(std::ostream& os, const DiagnosticsRecord& rec) {
  char buf[40];
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.12g", v);
    os << buf;
  };
  std::snprintf(buf, sizeof buf, "%.12g", rec.t);
  os << buf;
  put(rec.mass);
  put(rec.energy);
  put(rec.entropy);
  put(rec.k_hat);
  put(rec.undershoot);
  for (double v : rec.sobolev) put(v);
  for (double v : rec.analytic) put(v);
  put(rec.gevrey_c);
  put(rec.gevrey_r2);
  os << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records, int m_max,
                      const std::vector<double>& c0_list) {
  os << csv_header(m_max, c0_list) << '\n';
  for (const auto& r : records) write_csv_row(os, r);
}

}  // namespace landau
