#include "ks2d/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "ks2d/driver.hpp"
#include "ks2d/io.hpp"

namespace fs = std::filesystem;

namespace ks2d {

namespace {

std::string lambda_tag(double lambda) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", lambda);
  return buf;
}

SweepRow run_one(const RunConfig& base, double lambda) {
  SweepRow row;
  row.lambda = lambda;
  RunConfig cfg = base;
  cfg.model.lambda = lambda;
  cfg.out_dir =
      (fs::path(base.out_dir) / ("lambda_" + lambda_tag(lambda))).string();
  try {
    const int rc = run_to_files(cfg);
    row.status = rc == 0 ? "ok" : "blowup";
    const auto records =
        read_time_series((fs::path(cfg.out_dir) / "series.csv").string());
    for (const auto& r : records) row.peak_l2 = std::max(row.peak_l2, r.l2_norm);
    const auto& last = records.back();
    row.time_avg_energy = last.time_avg_energy;
    row.int_div_plus = last.running_int_div_plus;
    row.int_proj_div_plus = last.running_int_proj_div_plus;
    row.int_n_alpha_4 = last.running_int_n_alpha_4;
  } catch (const std::exception& e) {
    row.status = std::string("failed: ") + e.what();
  }
  return row;
}

}  // namespace

int sweep_workers_from_env() {
  if (const char* env = std::getenv("KS2D_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<SweepRow> sweep(const RunConfig& base,
                            const std::vector<double>& lambdas, int workers) {
  if (lambdas.empty()) {
    throw std::invalid_argument("sweep: lambda list is empty");
  }
  fs::create_directories(base.out_dir);

  std::vector<SweepRow> rows(lambdas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= lambdas.size()) return;
      rows[i] = run_one(base, lambdas[i]);
    }
  };
  const int nthreads =
      std::max(1, std::min<int>(workers, static_cast<int>(lambdas.size())));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.lambda < b.lambda; });

  std::ofstream summary(fs::path(base.out_dir) / "summary.csv");
  summary << "lambda,status,time_avg_energy,peak_l2,int_div_plus,"
             "int_proj_div_plus,int_n_alpha_4\n";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    summary << num(r.lambda) << "," << r.status << "," << num(r.time_avg_energy)
            << "," << num(r.peak_l2) << "," << num(r.int_div_plus) << ","
            << num(r.int_proj_div_plus) << "," << num(r.int_n_alpha_4) << "\n";
  }

  std::ofstream dat(fs::path(base.out_dir) / "energy_vs_lambda.dat");
  dat << "# lambda  time_avg_energy\n";
  for (const auto& r : rows) {
    dat << num(r.lambda) << "  " << num(r.time_avg_energy) << "\n";
  }

  std::ofstream gp(fs::path(base.out_dir) / "plot_energy.gp");
  gp << "set xlabel 'lambda'\n"
     << "set ylabel 'time-averaged energy'\n"
     << "set grid\n"
     << "plot 'energy_vs_lambda.dat' using 1:2 with linespoints title "
        "'(1/t) int |u|^2'\n"
     << "pause -1\n";

  return rows;
}

}  // namespace ks2d
