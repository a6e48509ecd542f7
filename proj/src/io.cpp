#include "ks2d/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace ks2d {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian");

namespace {

constexpr char kMagic[4] = {'K', 'S', '2', 'D'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
void read_raw(std::istream& in, T& value) {
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
}

void write_row_major(std::ostream& out, const Eigen::ArrayXXd& v) {
  const int n = static_cast<int>(v.rows());
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) row[j] = v(i, j);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(sizeof(double) * row.size()));
  }
}

Eigen::ArrayXXd read_row_major(std::istream& in, int n) {
  Eigen::ArrayXXd v(n, n);
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(sizeof(double) * row.size()));
    for (int j = 0; j < n; ++j) v(i, j) = row[j];
  }
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open snapshot file '" + path + "' for writing");
  const std::uint32_t n = static_cast<std::uint32_t>(snap.n());
  out.write(kMagic, 4);
  write_raw(out, kVersion);
  write_raw(out, n);
  write_raw(out, n);
  write_raw(out, snap.t);
  write_row_major(out, snap.v1);
  write_row_major(out, snap.v2);
  if (!out) throw IoError("short write to snapshot '" + path + "'");
}

void write_snapshot(const std::string& path, double t, const VectorField& u) {
  write_snapshot(path, Snapshot{t, u.u1().to_physical(), u.u2().to_physical()});
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot file '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw IoError("'" + path + "' is not a KS2D snapshot (bad magic)");
  }
  std::uint32_t version = 0, n1 = 0, n2 = 0;
  double t = 0.0;
  read_raw(in, version);
  read_raw(in, n1);
  read_raw(in, n2);
  read_raw(in, t);
  if (version != kVersion) {
    throw IoError("snapshot '" + path + "' has version " +
                  std::to_string(version) + ", expected " +
                  std::to_string(kVersion));
  }
  if (n1 != n2) {
    throw IoError("snapshot '" + path + "' is not square (" +
                  std::to_string(n1) + "x" + std::to_string(n2) + ")");
  }
  const Grid grid(static_cast<int>(n1));  // validates n
  Snapshot snap;
  snap.t = t;
  snap.v1 = read_row_major(in, grid.size());
  snap.v2 = read_row_major(in, grid.size());
  if (!in) throw IoError("snapshot '" + path + "' is truncated");
  in.peek();
  if (!in.eof()) throw IoError("snapshot '" + path + "' has trailing bytes");
  return snap;
}

const std::vector<std::string>& time_series_columns() {
  static const std::vector<std::string> columns = {
      "t",
      "l2_norm",
      "h1_norm",
      "h2_norm",
      "h_minus_alpha_norm",
      "h_minus2_norm",
      "energy",
      "div_plus_sup",
      "div_sup",
      "proj_div_plus_sup",
      "n_alpha",
      "n_u",
      "running_int_div_plus",
      "running_int_proj_div_plus",
      "running_int_n_alpha_4",
      "mean_u1",
      "mean_u2",
      "fluct_h1_norm",
      "dissipation",
      "destab",
      "transport",
      "budget_ia",
      "budget_ib",
      "budget_ic",
      "budget_ii",
      "time_avg_energy",
      "trilinear_ratio",
  };
  return columns;
}

std::vector<double> record_row(const DiagnosticsRecord& r) {
  return {r.t,
          r.l2_norm,
          r.h1_norm,
          r.h2_norm,
          r.h_minus_alpha_norm,
          r.h_minus2_norm,
          r.energy,
          r.div_plus_sup,
          r.div_sup,
          r.proj_div_plus_sup,
          r.n_alpha,
          r.n_u,
          r.running_int_div_plus,
          r.running_int_proj_div_plus,
          r.running_int_n_alpha_4,
          r.mean_u1,
          r.mean_u2,
          r.fluct_h1_norm,
          r.budget.dissipation,
          r.budget.destab,
          r.budget.transport,
          r.budget.i_a,
          r.budget.i_b,
          r.budget.i_c,
          r.budget.ii,
          r.time_avg_energy,
          r.trilinear_ratio};
}

TimeSeriesWriter::TimeSeriesWriter(const std::string& path) : path_(path) {
  out_.open(path, std::ios::trunc);
  if (!out_) throw IoError("cannot open time series '" + path + "' for writing");
  const auto& cols = time_series_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out_ << (i ? "," : "") << cols[i];
  }
  out_ << "\n";
}

void TimeSeriesWriter::append(const DiagnosticsRecord& r) {
  const std::vector<double> row = record_row(r);
  char buf[32];
  for (std::size_t i = 0; i < row.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
    out_ << (i ? "," : "") << buf;
  }
  out_ << "\n";
  if (!out_) throw IoError("short write to time series '" + path_ + "'");
}

void TimeSeriesWriter::flush() { out_.flush(); }

std::vector<DiagnosticsRecord> read_time_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open time series '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("time series '" + path + "' is empty");
  {
    std::ostringstream expected;
    const auto& cols = time_series_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
      expected << (i ? "," : "") << cols[i];
    }
    if (line != expected.str()) {
      throw IoError("time series '" + path + "' has an unexpected header");
    }
  }
  std::vector<DiagnosticsRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != time_series_columns().size()) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": expected " + std::to_string(time_series_columns().size()) +
                    " columns, got " + std::to_string(row.size()));
    }
    DiagnosticsRecord r;
    std::size_t i = 0;
    r.t = row[i++];
    r.l2_norm = row[i++];
    r.h1_norm = row[i++];
    r.h2_norm = row[i++];
    r.h_minus_alpha_norm = row[i++];
    r.h_minus2_norm = row[i++];
    r.energy = row[i++];
    r.div_plus_sup = row[i++];
    r.div_sup = row[i++];
    r.proj_div_plus_sup = row[i++];
    r.n_alpha = row[i++];
    r.n_u = row[i++];
    r.running_int_div_plus = row[i++];
    r.running_int_proj_div_plus = row[i++];
    r.running_int_n_alpha_4 = row[i++];
    r.mean_u1 = row[i++];
    r.mean_u2 = row[i++];
    r.fluct_h1_norm = row[i++];
    r.budget.dissipation = row[i++];
    r.budget.destab = row[i++];
    r.budget.transport = row[i++];
    r.budget.i_a = row[i++];
    r.budget.i_b = row[i++];
    r.budget.i_c = row[i++];
    r.budget.ii = row[i++];
    r.time_avg_energy = row[i++];
    r.trilinear_ratio = row[i++];
    records.push_back(r);
  }
  return records;
}

}  // namespace ks2d
