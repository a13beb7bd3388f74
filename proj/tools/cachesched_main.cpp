#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cachesched/colgen.hpp"
#include "cachesched/exact.hpp"
#include "cachesched/experiments.hpp"
#include "cachesched/greedy.hpp"
#include "cachesched/instance_io.hpp"
#include "cachesched/rounding.hpp"

namespace {

using namespace cachesched;
using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - from).count();
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    if (v == std::floor(v) && std::abs(v) < 1e15) std::snprintf(buf, sizeof buf, "%.0f", v);
    else std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void print_summary(const std::string& algo, const std::string& cost, const std::string& lb,
                   const std::string& gap_text, std::int64_t millis) {
    std::cout << "algo=" << algo << " cost=" << cost << " lb=" << lb << " gap=" << gap_text
              << " millis=" << millis << "\n";
}

void save_plan(const CachePlan& plan, const std::string& path) {
    nlohmann::json doc;
    doc["T"] = plan.num_slots;
    doc["F"] = plan.num_contents;
    doc["x"] = std::vector<int>(plan.x.begin(), plan.x.end());
    std::ofstream out(path);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing plan document");
}

CachePlan load_plan(const std::string& path, const Instance& instance) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open \"" + path + "\" for reading");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid plan document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("plan document root must be an object");
    for (const char* field : {"T", "F", "x"})
        if (!doc.contains(field))
            throw ParseError(std::string("missing field \"") + field + "\"");
    if (!doc.at("T").is_number_integer() || !doc.at("F").is_number_integer())
        throw ParseError("fields \"T\" and \"F\" must be integers");
    const int T = doc.at("T").get<int>();
    const int F = doc.at("F").get<int>();
    if (T != instance.num_slots || F != instance.num_contents)
        throw ParameterError("plan shape " + std::to_string(T) + "x" + std::to_string(F) +
                             " does not match the instance");
    if (!doc.at("x").is_array() ||
        doc.at("x").size() != static_cast<std::size_t>(T) * static_cast<std::size_t>(F))
        throw ParseError("field \"x\" must be an array of T*F entries");
    std::vector<std::uint8_t> x;
    x.reserve(doc.at("x").size());
    for (const nlohmann::json& v : doc.at("x")) {
        if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
            throw ParseError("field \"x\" entries must be 0 or 1");
        x.push_back(static_cast<std::uint8_t>(v.get<int>()));
    }
    return CachePlan::from_x(std::move(x), instance);
}

int run_solve(const std::string& algo, const std::string& instance_path,
              const std::string& plan_path, std::uint64_t seed, std::uint64_t limit,
              int threads) {
    const Instance inst = load_instance_file(instance_path);
    CgaOptions cga;
    cga.threads = threads;
    const auto t0 = Clock::now();
    if (algo == "lb") {
        if (!plan_path.empty())
            throw ParameterError("the bound computation produces no plan to write");
        const double lb = lower_bound(inst, cga);
        print_summary("lb", fmt(lb), fmt(lb), "0", elapsed_ms(t0));
        return 0;
    }
    CachePlan plan;
    Cost cost = 0;
    std::string lb_text = "na", gap_text = "na";
    if (algo == "rcga") {
        RcgaOptions opts;
        opts.cga = cga;
        RcgaResult r = run_rcga(inst, opts);
        plan = std::move(r.plan);
        cost = r.cost;
        lb_text = fmt(r.lower_bound);
        gap_text = fmt(gap(static_cast<double>(cost), r.lower_bound));
    } else if (algo == "pbc") {
        GreedyResult r = run_pbc(inst);
        plan = std::move(r.plan);
        cost = r.cost;
    } else if (algo == "rbc") {
        GreedyResult r = run_rbc(inst, seed);
        plan = std::move(r.plan);
        cost = r.cost;
    } else if (algo == "exact") {
        ExactResult r = solve_exact(inst, limit);
        plan = std::move(r.plan);
        cost = r.cost;
    } else {
        throw ParameterError("unknown algorithm \"" + algo + "\"");
    }
    const std::int64_t ms = elapsed_ms(t0);
    if (!plan_path.empty()) save_plan(plan, plan_path);
    print_summary(algo, std::to_string(cost), lb_text, gap_text, ms);
    return 0;
}

int run_verify(const std::string& instance_path, const std::string& plan_path) {
    const Instance inst = load_instance_file(instance_path);
    const auto t0 = Clock::now();
    const CachePlan plan = load_plan(plan_path, inst);
    const CapacityCheck cap = check_capacity(plan, inst);
    if (!cap) {
        std::cerr << "plan overflows slot " << cap.slot << ": load " << cap.load
                  << " exceeds capacity " << inst.capacity << "\n";
        return 1;
    }
    const Cost cost = total_cost(plan, inst);
    print_summary("verify", std::to_string(cost), "na", "na", elapsed_ms(t0));
    return 0;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"content cache update scheduling toolkit"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for pricing")
        ->check(CLI::Range(1, 4096))
        ->capture_default_str();

    auto* gen = app.add_subcommand("gen", "generate a random instance file");
    GenParams gp;
    std::string gen_out;
    gen->add_option("--T", gp.num_slots, "time slots")->capture_default_str();
    gen->add_option("--U", gp.num_users, "users")->capture_default_str();
    gen->add_option("--F", gp.num_contents, "contents")->capture_default_str();
    gen->add_option("--size-min", gp.size_range.first, "smallest content size")
        ->capture_default_str();
    gen->add_option("--size-max", gp.size_range.second, "largest content size")
        ->capture_default_str();
    gen->add_option("--rho", gp.rho, "cache capacity fraction of total size")
        ->capture_default_str();
    gen->add_option("--gamma", gp.gamma, "popularity skew")->capture_default_str();
    gen->add_option("--alpha", gp.alpha, "deadline slack fraction")->capture_default_str();
    gen->add_option("--requests-min", gp.requests_per_user_range.first,
                    "fewest requests per user")
        ->capture_default_str();
    gen->add_option("--requests-max", gp.requests_per_user_range.second,
                    "most requests per user")
        ->capture_default_str();
    gen->add_option("--cost-server", gp.cost_server, "per-unit server download cost")
        ->capture_default_str();
    gen->add_option("--cost-cache", gp.cost_cache, "per-unit cache download cost")
        ->capture_default_str();
    gen->add_option("--seed", gp.seed, "generator seed")->capture_default_str();
    gen->add_option("--out", gen_out, "output instance file")->required();

    auto* solve = app.add_subcommand("solve", "run one algorithm on an instance");
    std::string algo, solve_instance, solve_plan;
    std::uint64_t solve_seed = 0;
    std::uint64_t limit = kDefaultExactLimit;
    solve->add_option("--algo", algo, "rcga, pbc, rbc, exact, or lb")
        ->required()
        ->check(CLI::IsMember({"rcga", "pbc", "rbc", "exact", "lb"}));
    solve->add_option("--instance", solve_instance, "instance file")->required();
    solve->add_option("--plan", solve_plan, "write the plan here");
    solve->add_option("--seed", solve_seed, "seed for the randomized baseline")
        ->capture_default_str();
    solve->add_option("--limit", limit, "exhaustive search size limit")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep to CSV");
    std::string sweep_spec, sweep_out;
    sweep->add_option("--spec", sweep_spec, "sweep description file")->required();
    sweep->add_option("--out", sweep_out, "output CSV file")->required();

    auto* lp = app.add_subcommand("export-lp", "write the full integer program in LP format");
    std::string lp_instance, lp_out;
    lp->add_option("--instance", lp_instance, "instance file")->required();
    lp->add_option("--out", lp_out, "output LP file")->required();

    auto* verify = app.add_subcommand("verify", "recheck a plan against an instance");
    std::string verify_instance, verify_plan;
    verify->add_option("--instance", verify_instance, "instance file")->required();
    verify->add_option("--plan", verify_plan, "plan file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 1;
    }

    if (gen->parsed()) {
        const Instance inst = generate_instance(gp);
        save_instance(inst, gen_out);
        std::cout << "wrote " << gen_out << " (" << inst.requests.size() << " requests)\n";
        return 0;
    }
    if (solve->parsed()) return run_solve(algo, solve_instance, solve_plan, solve_seed, limit, threads);
    if (sweep->parsed()) {
        SweepSpec spec = load_sweep_spec_file(sweep_spec);
        if (app.count("--threads") > 0) spec.threads = threads;
        const SweepResult result = run_sweep(spec);
        write_csv_file(result.records, spec.param, sweep_out);
        std::cout << "wrote " << sweep_out << " (" << result.records.size() << " rows)\n";
        return 0;
    }
    if (lp->parsed()) {
        const Instance inst = load_instance_file(lp_instance);
        export_lp_file(inst, lp_out);
        std::cout << "wrote " << lp_out << "\n";
        return 0;
    }
    if (verify->parsed()) return run_verify(verify_instance, verify_plan);
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
