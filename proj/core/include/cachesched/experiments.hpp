#ifndef CACHESCHED_EXPERIMENTS_HPP
#define CACHESCHED_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cachesched/instance.hpp"

namespace cachesched {

enum class SweepParam { Alpha, T, U, F, Rho, Gamma };

std::string to_string(SweepParam param);
SweepParam sweep_param_from_string(const std::string& name);

enum class Algo { Lb, Rcga, Pbc, Rbc };

std::string to_string(Algo algo);
inline constexpr std::array<Algo, 4> kAlgoOrder{Algo::Lb, Algo::Rcga, Algo::Pbc, Algo::Rbc};

// A simulation campaign: one generator parameter swept over a value list,
// several seeded replications per value.
struct SweepSpec {
    GenParams base;
    SweepParam param = SweepParam::Alpha;
    std::vector<double> values;
    int replications = 5;
    std::uint64_t base_seed = 0;
    // Wall-clock measurement makes the CSV non-reproducible byte for byte, so
    // the column is zeroed unless explicitly requested.
    bool include_millis = false;
    int threads = 1;
};

// One algorithm run on one generated instance; one CSV line.
struct SweepRecord {
    double value = 0.0;
    int replication = 0;
    std::uint64_t seed = 0;
    Algo algo = Algo::Lb;
    double cost = 0.0;   // NaN when failed
    double gap = 0.0;    // (cost - lb) / lb; NaN when unavailable
    std::int64_t millis = 0;
    bool failed = false;
};

struct AlgoStats {
    double mean_cost = 0.0;
    double mean_gap = 0.0;
    double mean_millis = 0.0;
    int failures = 0;
};

// Per-value aggregation over replications, means over the successful runs.
struct SweepRow {
    double value = 0.0;
    std::array<AlgoStats, 4> stats; // indexed by kAlgoOrder position
};

struct SweepResult {
    std::vector<SweepRecord> records; // sorted by value, replication, algo order
    std::vector<SweepRow> rows;       // sorted by value
};

// Relative distance from the lower bound. Degenerate bounds: 0/0 is 0, a
// positive cost over a zero bound is infinity.
double gap(double cost, double lb);

// Applies one swept value to the base parameters (integer parameters are
// rounded) and returns the result; the seed field is left untouched.
GenParams apply_sweep_value(const GenParams& base, SweepParam param, double value);

// For each value and replication: generates the instance with
// seed = base_seed + replication, then runs the bound and the three
// algorithms. A SolverError marks that record failed and the sweep continues;
// any other error propagates.
SweepResult run_sweep(const SweepSpec& spec);

// CSV with header param,value,replication,seed,algo,cost,gap,millis.
void write_csv(const std::vector<SweepRecord>& records, SweepParam param, std::ostream& out);
void write_csv_file(const std::vector<SweepRecord>& records, SweepParam param,
                    const std::string& path);

// JSON document with required "param" and "values" plus optional
// "replications", "base_seed", "include_millis", "threads", and generator
// fields under "base".
SweepSpec load_sweep_spec(std::istream& in);
SweepSpec load_sweep_spec_file(const std::string& path);

} // namespace cachesched

#endif
