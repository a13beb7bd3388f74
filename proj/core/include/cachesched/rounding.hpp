#ifndef CACHESCHED_ROUNDING_HPP
#define CACHESCHED_ROUNDING_HPP

#include <functional>
#include <string>
#include <vector>

#include "cachesched/colgen.hpp"
#include "cachesched/cost.hpp"
#include "cachesched/fixes.hpp"
#include "cachesched/instance.hpp"

namespace cachesched {

inline constexpr double kIntegralityEps = 1e-6;

// Aggregated caching indicator: z_tf sums the master weights of content f's
// pooled columns that cache f in slot t. Binary exactly when the weights are
// integral.
struct ZMatrix {
    int num_slots = 0;
    int num_contents = 0;
    std::vector<double> z; // row-major by slot

    double at(int slot0, int content0) const {
        return z[static_cast<std::size_t>(slot0) * num_contents + content0];
    }
    bool binary(double eps = kIntegralityEps) const;
};

ZMatrix compute_z(const ColumnPool& pool, const std::vector<double>& w,
                  const Instance& instance);

bool weights_integral(const std::vector<double>& w, double eps = kIntegralityEps);

// One rounding round over a fractional z: fixes every near-one entry, settles
// one steering fractional entry (toward zero when the smallest fractional
// value is below the distance of the largest from one, otherwise toward one
// if it still fits), zeroes contents that can no longer fit a slot's spare
// capacity, and appends one column per content matching its fixed-one slots.
// Throws when z is already binary. An empty fix set is initialized in place.
void tra_step(const ZMatrix& z, ColumnPool& pool, FixSet& fixes, const Instance& instance);

struct RcgaOptions {
    CgaOptions cga;
    int max_rounds = 0; // 0 means the F * T termination guarantee
    // Optional per-round trace: round, fixes, fractional entries, objective.
    std::function<void(const std::string&)> trace;
};

struct RcgaResult {
    CachePlan plan;
    Cost cost = 0;
    double lower_bound = 0.0;
    int iterations = 0; // column generation passes executed
    int rmp_solves = 0; // across all column generation passes
};

// Alternates column generation and rounding from an empty fix set until the
// master weights are integral. The first pass objective is kept as the lower
// bound; the final plan is decoded from z and capacity-checked.
RcgaResult run_rcga(const Instance& instance, const RcgaOptions& options = {});

} // namespace cachesched

#endif
