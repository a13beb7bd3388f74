#include "cachesched/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "cachesched/colgen.hpp"
#include "cachesched/greedy.hpp"
#include "cachesched/rounding.hpp"

namespace cachesched {

std::string to_string(SweepParam param) {
    switch (param) {
    case SweepParam::Alpha: return "alpha";
    case SweepParam::T: return "T";
    case SweepParam::U: return "U";
    case SweepParam::F: return "F";
    case SweepParam::Rho: return "rho";
    case SweepParam::Gamma: return "gamma";
    }
    throw ParameterError("sweep: unknown parameter tag");
}

SweepParam sweep_param_from_string(const std::string& name) {
    if (name == "alpha") return SweepParam::Alpha;
    if (name == "T") return SweepParam::T;
    if (name == "U") return SweepParam::U;
    if (name == "F") return SweepParam::F;
    if (name == "rho") return SweepParam::Rho;
    if (name == "gamma") return SweepParam::Gamma;
    throw ParameterError("sweep: parameter must be one of alpha, T, U, F, rho, gamma; got \"" +
                         name + "\"");
}

std::string to_string(Algo algo) {
    switch (algo) {
    case Algo::Lb: return "lb";
    case Algo::Rcga: return "rcga";
    case Algo::Pbc: return "pbc";
    case Algo::Rbc: return "rbc";
    }
    throw ParameterError("sweep: unknown algorithm tag");
}

double gap(double cost, double lb) {
    if (lb == 0.0) {
        if (cost == 0.0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    return (cost - lb) / lb;
}

GenParams apply_sweep_value(const GenParams& base, SweepParam param, double value) {
    GenParams p = base;
    const auto as_count = [&](const char* what) {
        if (!std::isfinite(value) || value < 1.0 || value > 1e9)
            throw ParameterError(std::string("sweep: ") + what + " value out of range");
        return static_cast<int>(std::llround(value));
    };
    switch (param) {
    case SweepParam::Alpha: p.alpha = value; break;
    case SweepParam::T: p.num_slots = as_count("T"); break;
    case SweepParam::U: p.num_users = as_count("U"); break;
    case SweepParam::F: p.num_contents = as_count("F"); break;
    case SweepParam::Rho: p.rho = value; break;
    case SweepParam::Gamma: p.gamma = value; break;
    }
    return p;
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - from).count();
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.values.empty()) throw ParameterError("sweep: value list is empty");
    if (spec.replications < 1) throw ParameterError("sweep: replications must be at least 1");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    SweepResult result;
    for (const double value : spec.values) {
        for (int rep = 0; rep < spec.replications; ++rep) {
            GenParams params = apply_sweep_value(spec.base, spec.param, value);
            params.seed = spec.base_seed + static_cast<std::uint64_t>(rep);
            const Instance inst = generate_instance(params);

            CgaOptions cga;
            cga.threads = spec.threads;

            const auto record = [&](Algo algo, double cost, double lb_ref, bool ok,
                                    std::int64_t ms) {
                SweepRecord r;
                r.value = value;
                r.replication = rep;
                r.seed = params.seed;
                r.algo = algo;
                r.failed = !ok;
                r.cost = ok ? cost : nan;
                if (algo == Algo::Lb) r.gap = ok ? 0.0 : nan;
                else r.gap = (ok && !std::isnan(lb_ref)) ? gap(cost, lb_ref) : nan;
                r.millis = spec.include_millis ? ms : 0;
                result.records.push_back(r);
            };

            double lb_value = nan;
            {
                const auto t0 = Clock::now();
                bool ok = true;
                double cost = nan;
                try {
                    cost = lower_bound(inst, cga);
                    lb_value = cost;
                } catch (const SolverError&) {
                    ok = false;
                }
                record(Algo::Lb, cost, nan, ok, elapsed_ms(t0));
            }
            {
                const auto t0 = Clock::now();
                bool ok = true;
                double cost = nan;
                try {
                    RcgaOptions opts;
                    opts.cga = cga;
                    cost = static_cast<double>(run_rcga(inst, opts).cost);
                } catch (const SolverError&) {
                    ok = false;
                }
                record(Algo::Rcga, cost, lb_value, ok, elapsed_ms(t0));
            }
            {
                const auto t0 = Clock::now();
                bool ok = true;
                double cost = nan;
                try {
                    cost = static_cast<double>(run_pbc(inst).cost);
                } catch (const SolverError&) {
                    ok = false;
                }
                record(Algo::Pbc, cost, lb_value, ok, elapsed_ms(t0));
            }
            {
                const auto t0 = Clock::now();
                bool ok = true;
                double cost = nan;
                try {
                    cost = static_cast<double>(run_rbc(inst, params.seed).cost);
                } catch (const SolverError&) {
                    ok = false;
                }
                record(Algo::Rbc, cost, lb_value, ok, elapsed_ms(t0));
            }
        }
    }

    // Stable ordering contract: value, then replication, algos in fixed order.
    std::stable_sort(result.records.begin(), result.records.end(),
                     [](const SweepRecord& a, const SweepRecord& b) {
                         if (a.value != b.value) return a.value < b.value;
                         return a.replication < b.replication;
                     });

    std::vector<double> sorted_values = spec.values;
    std::stable_sort(sorted_values.begin(), sorted_values.end());
    sorted_values.erase(std::unique(sorted_values.begin(), sorted_values.end()),
                        sorted_values.end());
    for (const double value : sorted_values) {
        SweepRow row;
        row.value = value;
        for (std::size_t ai = 0; ai < kAlgoOrder.size(); ++ai) {
            const Algo algo = kAlgoOrder[ai];
            double cost_sum = 0.0, gap_sum = 0.0, ms_sum = 0.0;
            int n = 0, failures = 0;
            for (const SweepRecord& r : result.records) {
                if (r.value != value || r.algo != algo) continue;
                if (r.failed) {
                    ++failures;
                    continue;
                }
                cost_sum += r.cost;
                gap_sum += std::isnan(r.gap) ? 0.0 : r.gap;
                ms_sum += static_cast<double>(r.millis);
                ++n;
            }
            AlgoStats s;
            s.failures = failures;
            s.mean_cost = n > 0 ? cost_sum / n : std::numeric_limits<double>::quiet_NaN();
            s.mean_gap = n > 0 ? gap_sum / n : std::numeric_limits<double>::quiet_NaN();
            s.mean_millis = n > 0 ? ms_sum / n : 0.0;
            row.stats[ai] = s;
        }
        result.rows.push_back(row);
    }
    return result;
}

namespace {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

void write_csv(const std::vector<SweepRecord>& records, SweepParam param, std::ostream& out) {
    const std::string name = to_string(param);
    out << "param,value,replication,seed,algo,cost,gap,millis\n";
    for (const SweepRecord& r : records) {
        out << name << ',' << format_number(r.value) << ',' << r.replication << ',' << r.seed
            << ',' << to_string(r.algo) << ',' << format_number(r.cost) << ','
            << format_number(r.gap) << ',' << r.millis << '\n';
    }
    if (!out) throw IoError("failed writing sweep results");
}

void write_csv_file(const std::vector<SweepRecord>& records, SweepParam param,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    write_csv(records, param, out);
}

namespace {

using nlohmann::json;

std::int64_t opt_int(const json& obj, const char* field, std::int64_t fallback) {
    if (!obj.contains(field)) return fallback;
    const json& v = obj.at(field);
    if (!v.is_number_integer())
        throw ParseError(std::string("field \"") + field + "\" must be an integer");
    return v.get<std::int64_t>();
}

double opt_num(const json& obj, const char* field, double fallback) {
    if (!obj.contains(field)) return fallback;
    const json& v = obj.at(field);
    if (!v.is_number())
        throw ParseError(std::string("field \"") + field + "\" must be a number");
    return v.get<double>();
}

} // namespace

SweepSpec load_sweep_spec(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid sweep document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("sweep document root must be an object");
    SweepSpec spec;
    if (!doc.contains("param")) throw ParseError("missing field \"param\"");
    if (!doc.at("param").is_string()) throw ParseError("field \"param\" must be a string");
    try {
        spec.param = sweep_param_from_string(doc.at("param").get<std::string>());
    } catch (const ParameterError& e) {
        throw ParseError(e.what());
    }
    if (!doc.contains("values") || !doc.at("values").is_array() || doc.at("values").empty())
        throw ParseError("field \"values\" must be a nonempty array");
    for (const json& v : doc.at("values")) {
        if (!v.is_number()) throw ParseError("field \"values\" must hold numbers");
        spec.values.push_back(v.get<double>());
    }
    spec.replications = static_cast<int>(opt_int(doc, "replications", spec.replications));
    spec.base_seed = static_cast<std::uint64_t>(opt_int(doc, "base_seed", 0));
    if (doc.contains("include_millis")) {
        if (!doc.at("include_millis").is_boolean())
            throw ParseError("field \"include_millis\" must be a boolean");
        spec.include_millis = doc.at("include_millis").get<bool>();
    }
    spec.threads = static_cast<int>(opt_int(doc, "threads", spec.threads));
    if (doc.contains("base")) {
        const json& b = doc.at("base");
        if (!b.is_object()) throw ParseError("field \"base\" must be an object");
        GenParams& g = spec.base;
        g.num_slots = static_cast<int>(opt_int(b, "T", g.num_slots));
        g.num_users = static_cast<int>(opt_int(b, "U", g.num_users));
        g.num_contents = static_cast<int>(opt_int(b, "F", g.num_contents));
        g.size_range.first = opt_int(b, "size_min", g.size_range.first);
        g.size_range.second = opt_int(b, "size_max", g.size_range.second);
        g.rho = opt_num(b, "rho", g.rho);
        g.gamma = opt_num(b, "gamma", g.gamma);
        g.alpha = opt_num(b, "alpha", g.alpha);
        g.requests_per_user_range.first =
            static_cast<int>(opt_int(b, "requests_min", g.requests_per_user_range.first));
        g.requests_per_user_range.second =
            static_cast<int>(opt_int(b, "requests_max", g.requests_per_user_range.second));
        g.cost_server = opt_int(b, "cost_server", g.cost_server);
        g.cost_cache = opt_int(b, "cost_cache", g.cost_cache);
        g.seed = static_cast<std::uint64_t>(opt_int(b, "seed", 0));
    }
    if (spec.replications < 1) throw ParseError("field \"replications\" must be at least 1");
    try {
        spec.base.validate();
    } catch (const ParameterError& e) {
        throw ParseError(e.what());
    }
    return spec;
}

SweepSpec load_sweep_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open \"" + path + "\" for reading");
    return load_sweep_spec(in);
}

} // namespace cachesched
