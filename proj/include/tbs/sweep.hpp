#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tbs/models.hpp"

namespace tbs {

struct RunConfig {
    std::string experiment;
    int n = 7;
    int m = 1;
    double j = M_PI / 4;
    double b = M_PI / 4;
    Boundary boundary = Boundary::open;
    DisorderSpec disorder{DisorderSpec::Kind::box, 1.0}; // h_i on [-1/2, 1/2]
    double beta = 0.0;
    std::vector<double> g_grid; // empty = experiment default
    std::vector<long> t_grid;   // empty = experiment default
    double g_fixed = M_PI;
    long t_fixed = 28;
    int realizations = 20;
    int samples = 500; // Monte-Carlo sample counts
    std::uint64_t seed = 42;
    int threads = 0; // 0 = hardware concurrency
    std::string out_path;
};

/// One output row: ordered (column, value) pairs. Every record carries the
/// parameters needed to re-run it in isolation.
using Record = std::vector<std::pair<std::string, std::string>>;

struct SweepResult {
    std::vector<Record> records;
    int violations = 0; // audited inequality/identity failures
};

std::string format_double(double x); // shortest round-trip representation

/// CSV with a one-line JSON metadata header comment.
std::string to_csv(const RunConfig& cfg, const std::vector<Record>& records);

/// Deterministic parallel map: task i writes only its own slot; callers
/// reduce in fixed index order afterwards.
void parallel_for(int n_tasks, int threads, const std::function<void(int)>& fn);

SweepResult run_fig3_left(const RunConfig& cfg);
SweepResult run_fig3_right(const RunConfig& cfg);
SweepResult run_bounds_sweep(const RunConfig& cfg);
SweepResult run_channel_audit(const RunConfig& cfg);
SweepResult run_haar_check(const RunConfig& cfg);
SweepResult run_size_dist(const RunConfig& cfg);
SweepResult run_tfd_check(const RunConfig& cfg);

SweepResult run_experiment(const RunConfig& cfg); // dispatch on cfg.experiment

} // namespace tbs
