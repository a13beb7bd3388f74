#include "cachesched/rounding.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cachesched {

bool ZMatrix::binary(double eps) const {
    for (const double v : z)
        if (v > eps && v < 1.0 - eps) return false;
    return true;
}

ZMatrix compute_z(const ColumnPool& pool, const std::vector<double>& w,
                  const Instance& instance) {
    if (w.size() != pool.size())
        throw ParameterError("rounding: one weight per pooled column required");
    ZMatrix out;
    out.num_slots = instance.num_slots;
    out.num_contents = instance.num_contents;
    out.z.assign(static_cast<std::size_t>(instance.num_slots) * instance.num_contents, 0.0);
    for (std::size_t k = 0; k < pool.size(); ++k) {
        const Column& c = pool[k];
        if (c.content < 0 || c.content >= instance.num_contents ||
            static_cast<int>(c.sequence.size()) != instance.num_slots)
            throw ParameterError("rounding: column shape does not match the instance");
        const double wk = w[k];
        if (wk == 0.0) continue;
        for (int t = 0; t < instance.num_slots; ++t)
            if (c.sequence[static_cast<std::size_t>(t)])
                out.z[static_cast<std::size_t>(t) * instance.num_contents + c.content] += wk;
    }
    for (double& v : out.z) {
        if (v < 0.0 && v >= -1e-9) v = 0.0;
        if (v > 1.0 && v <= 1.0 + 1e-9) v = 1.0;
    }
    return out;
}

bool weights_integral(const std::vector<double>& w, double eps) {
    for (const double v : w)
        if (v > eps && v < 1.0 - eps) return false;
    return true;
}

void tra_step(const ZMatrix& z, ColumnPool& pool, FixSet& fixes, const Instance& instance) {
    const int T = instance.num_slots;
    const int F = instance.num_contents;
    if (z.num_slots != T || z.num_contents != F)
        throw ParameterError("rounding: z shape does not match the instance");
    if (fixes.num_slots() == 0) fixes = FixSet(T, F);
    else if (fixes.num_slots() != T || fixes.num_contents() != F)
        throw ParameterError("rounding: fixes shape does not match the instance");
    const double eps = kIntegralityEps;
    if (z.binary(eps))
        throw ParameterError("rounding: step requires a fractional solution");

    for (int t = 0; t < T; ++t)
        for (int f = 0; f < F; ++f)
            if (z.at(t, f) >= 1.0 - eps) fixes.set(t, f, true);
    pool.discard_incompatible(fixes);

    const auto spare = [&](int t0) {
        Cost s = instance.capacity;
        for (int f = 0; f < F; ++f)
            if (fixes.is_fixed(t0, f) && fixes.value(t0, f)) s -= instance.size_of(f);
        return s;
    };

    // Steering entries: smallest fractional value and the value nearest one.
    // Scan order (slot, then content) resolves ties.
    double zlo = std::numeric_limits<double>::infinity();
    double zhi = -std::numeric_limits<double>::infinity();
    int lo_t = -1, lo_f = -1, hi_t = -1, hi_f = -1;
    for (int t = 0; t < T; ++t) {
        for (int f = 0; f < F; ++f) {
            const double v = z.at(t, f);
            if (v <= eps || v >= 1.0 - eps) continue;
            if (v < zlo) {
                zlo = v;
                lo_t = t;
                lo_f = f;
            }
            if (v > zhi) {
                zhi = v;
                hi_t = t;
                hi_f = f;
            }
        }
    }
    if (zlo < 1.0 - zhi) fixes.set(lo_t, lo_f, false);
    else if (instance.size_of(hi_f) <= spare(hi_t)) fixes.set(hi_t, hi_f, true);
    else fixes.set(hi_t, hi_f, false);
    pool.discard_incompatible(fixes);

    for (int t = 0; t < T; ++t) {
        const Cost room = spare(t);
        for (int f = 0; f < F; ++f)
            if (!fixes.is_fixed(t, f) && instance.size_of(f) > room) fixes.set(t, f, false);
    }
    pool.discard_incompatible(fixes);

    // Fallback columns: cache exactly the fixed-one slots. They keep every
    // content's group feasible no matter what was discarded.
    for (int f = 0; f < F; ++f) {
        std::vector<std::uint8_t> seq(static_cast<std::size_t>(T), 0);
        for (int t = 0; t < T; ++t)
            if (fixes.is_fixed(t, f) && fixes.value(t, f)) seq[static_cast<std::size_t>(t)] = 1;
        pool.add(make_column(f, std::move(seq), instance));
    }
}

RcgaResult run_rcga(const Instance& instance, const RcgaOptions& options) {
    instance.validate();
    const int T = instance.num_slots;
    const int F = instance.num_contents;
    const int max_rounds = options.max_rounds > 0 ? options.max_rounds : F * T;

    ColumnPool pool(instance);
    FixSet fixes(T, F);
    RcgaResult res;
    ZMatrix z;
    while (true) {
        const CgaResult cga = run_cga(instance, pool, fixes, options.cga);
        res.rmp_solves += cga.rmp_solves;
        ++res.iterations;
        if (res.iterations == 1) res.lower_bound = cga.lp.objective;
        z = compute_z(pool, cga.lp.w, instance);
        const bool integral_w = weights_integral(cga.lp.w);
        const bool binary_z = z.binary();
        if (integral_w != binary_z)
            throw SolverError("rounding: weight integrality and indicator binarity disagree");
        if (options.trace) {
            int fractional = 0;
            for (const double v : z.z)
                if (v > kIntegralityEps && v < 1.0 - kIntegralityEps) ++fractional;
            std::ostringstream os;
            os << "round " << res.iterations << " fixes " << fixes.count() << " fractional "
               << fractional << " objective " << cga.lp.objective;
            options.trace(os.str());
        }
        if (binary_z) break;
        if (res.iterations >= max_rounds)
            throw SolverError("rounding: no integral solution within " +
                              std::to_string(max_rounds) + " rounds");
        tra_step(z, pool, fixes, instance);
    }

    std::vector<std::uint8_t> x(z.z.size());
    for (std::size_t i = 0; i < z.z.size(); ++i) x[i] = z.z[i] > 0.5 ? 1 : 0;
    res.plan = CachePlan::from_x(std::move(x), instance);
    const CapacityCheck cap = check_capacity(res.plan, instance);
    if (!cap)
        throw SolverError("rounding: final plan overflows slot " + std::to_string(cap.slot) +
                          " with load " + std::to_string(cap.load));
    res.cost = total_cost(res.plan, instance);
    if (static_cast<double>(res.cost) < res.lower_bound - 1e-6 * (1.0 + res.lower_bound))
        throw SolverError("rounding: final cost fell below the lower bound");
    return res;
}

} // namespace cachesched
