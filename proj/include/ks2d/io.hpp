#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "ks2d/diagnostics.hpp"
#include "ks2d/spectral.hpp"

namespace ks2d {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary snapshot, little-endian, 24-byte header:
///   magic "KS2D" | u32 version = 1 | u32 n | u32 n | f64 time
/// followed by u1 then u2 as row-major n*n f64 physical values.  Version 1
/// always carries exactly these two fields.  Total size 24 + 2*8*n^2 bytes.
/// The payload is the raw physical samples, so read/write round-trips are
/// bit-exact; to_field() converts to the spectral representation.
struct Snapshot {
  double t = 0.0;
  Eigen::ArrayXXd v1, v2;

  int n() const { return static_cast<int>(v1.rows()); }
  VectorField to_field() const {
    const Grid grid(n());
    return {SpectralField::from_physical(grid, v1),
            SpectralField::from_physical(grid, v2)};
  }
};

void write_snapshot(const std::string& path, double t, const VectorField& u);
void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

/// CSV column names of a DiagnosticsRecord, in serialization order.
const std::vector<std::string>& time_series_columns();
std::vector<double> record_row(const DiagnosticsRecord& r);

/// Streams diagnostics records to CSV; floats carry 17 significant digits so
/// a written series round-trips through text exactly.
class TimeSeriesWriter {
 public:
  explicit TimeSeriesWriter(const std::string& path);
  void append(const DiagnosticsRecord& r);
  void flush();

 private:
  std::ofstream out_;
  std::string path_;
};

std::vector<DiagnosticsRecord> read_time_series(const std::string& path);

}  // namespace ks2d
