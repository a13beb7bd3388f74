#include "cachesched/exact.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace cachesched {

namespace {

// Depth-first enumeration of caching matrices in lexicographic order
// (row-major by slot, 0 before 1). Costs are maintained incrementally and
// the first strict improvement wins, so ties resolve to the smallest matrix.
class ExhaustiveSearch {
public:
    explicit ExhaustiveSearch(const Instance& inst)
        : inst_(inst), T_(inst.num_slots), F_(inst.num_contents),
          x_(static_cast<std::size_t>(T_) * F_, 0),
          served_(inst.requests.size(), 0) {
        Cost all_server = 0;
        for (const Request& r : inst.requests)
            all_server += inst.size_of(r.content - 1) * inst.cost_server;
        download_sum_ = all_server;
    }

    ExactResult run() {
        descend_cell(0, 0, 0);
        ExactResult result;
        result.plan = CachePlan::from_x(best_x_, inst_);
        result.cost = best_cost_;
        return result;
    }

private:
    void descend_cell(int t, int f, Cost row_load) {
        if (f == F_) {
            enter_row(t);
            return;
        }
        const std::size_t i = static_cast<std::size_t>(t) * F_ + f;
        x_[i] = 0;
        descend_cell(t, f + 1, row_load);
        const Cost l = inst_.size_of(f);
        if (row_load + l <= inst_.capacity) {
            x_[i] = 1;
            descend_cell(t, f + 1, row_load + l);
            x_[i] = 0;
        }
    }

    void enter_row(int t) {
        // Update cost of the completed row.
        const Cost delta = inst_.cost_server - inst_.cost_cache;
        Cost row_update = 0;
        for (int f = 0; f < F_; ++f) {
            const std::size_t i = static_cast<std::size_t>(t) * F_ + f;
            const bool prev = t > 0 && x_[i - static_cast<std::size_t>(F_)] != 0;
            if (x_[i] && !prev) row_update += inst_.size_of(f) * delta;
        }
        update_sum_ += row_update;

        // Earliest-slot service: requests alive at this slot whose content
        // just became available.
        std::vector<std::uint32_t> newly_served;
        for (std::size_t i = 0; i < inst_.requests.size(); ++i) {
            const Request& r = inst_.requests[i];
            if (served_[i] || r.origin > t + 1 || r.deadline < t + 1) continue;
            if (x_[static_cast<std::size_t>(t) * F_ + (r.content - 1)]) {
                served_[i] = t + 1;
                download_sum_ -= inst_.size_of(r.content - 1) * delta;
                newly_served.push_back(static_cast<std::uint32_t>(i));
            }
        }

        if (t + 1 == T_) {
            const Cost cost = download_sum_ + update_sum_;
            if (cost < best_cost_) {
                best_cost_ = cost;
                best_x_ = x_;
            }
        } else {
            descend_cell(t + 1, 0, 0);
        }

        const Cost delta2 = inst_.cost_server - inst_.cost_cache;
        for (const std::uint32_t i : newly_served) {
            served_[i] = 0;
            download_sum_ += inst_.size_of(inst_.requests[i].content - 1) * delta2;
        }
        update_sum_ -= row_update;
    }

    const Instance& inst_;
    const int T_, F_;
    std::vector<std::uint8_t> x_;
    std::vector<int> served_;
    Cost download_sum_ = 0;
    Cost update_sum_ = 0;
    Cost best_cost_ = std::numeric_limits<Cost>::max();
    std::vector<std::uint8_t> best_x_;
};

} // namespace

ExactResult solve_exact(const Instance& instance, std::uint64_t limit) {
    instance.validate();
    const long long bits =
        static_cast<long long>(instance.num_slots) * instance.num_contents;
    if (bits > 63 || (std::uint64_t{1} << bits) > limit)
        throw SizeError("solve_exact: 2^(F*T) exceeds the search limit; use rcga instead");
    return ExhaustiveSearch(instance).run();
}

SubproblemResult solve_subproblem_bruteforce(int content0,
                                             const std::vector<double>& pi,
                                             const Instance& instance,
                                             const FixSet& fixes) {
    const int T = instance.num_slots;
    if (static_cast<int>(pi.size()) != T)
        throw ParameterError("subproblem: pi must have one entry per slot");
    if (T > 24) throw SizeError("subproblem: brute force requires T <= 24");
    const double l = static_cast<double>(instance.size_of(content0));

    bool have_best = false;
    SubproblemResult best;
    int best_popcount = 0;
    std::vector<std::uint8_t> seq(static_cast<std::size_t>(T), 0);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << T); ++mask) {
        for (int t = 0; t < T; ++t)
            seq[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>((mask >> t) & 1u);
        if (fixes.num_slots() > 0 && !fixes.compatible(content0, seq)) continue;
        double obj = static_cast<double>(column_cost(content0, seq, instance));
        for (int t = 0; t < T; ++t)
            if (seq[static_cast<std::size_t>(t)]) obj -= l * pi[static_cast<std::size_t>(t)];
        const int pc = std::popcount(mask);
        const bool better =
            !have_best || obj < best.objective ||
            (obj == best.objective &&
             (pc < best_popcount ||
              (pc == best_popcount &&
               std::lexicographical_compare(seq.begin(), seq.end(),
                                            best.sequence.begin(), best.sequence.end()))));
        if (better) {
            best.sequence = seq;
            best.objective = obj;
            best_popcount = pc;
            have_best = true;
        }
    }
    if (!have_best)
        throw ParameterError("subproblem: fixes rule out every sequence");
    return best;
}

namespace {

// Writes LP-format expressions with modest line wrapping.
class LpWriter {
public:
    explicit LpWriter(std::ostream& out) : out_(out) {}

    void line(const std::string& s) {
        flush();
        out_ << s << '\n';
    }

    void begin(const std::string& prefix) {
        flush();
        buffer_ = prefix;
        first_term_ = true;
    }

    void term(Cost coef, const std::string& var) {
        if (coef == 0) return;
        std::string tok;
        if (first_term_) {
            if (coef < 0) tok += "- ";
        } else {
            tok += (coef < 0) ? " - " : " + ";
        }
        const Cost mag = coef < 0 ? -coef : coef;
        if (mag != 1) tok += std::to_string(mag) + " ";
        tok += var;
        append(tok);
        first_term_ = false;
    }

    void constant(Cost value) {
        if (value == 0) return;
        std::string tok = first_term_ ? (value < 0 ? "- " : "")
                                      : (value < 0 ? " - " : " + ");
        tok += std::to_string(value < 0 ? -value : value);
        append(tok);
        first_term_ = false;
    }

    void finish(const std::string& tail) {
        append(tail);
        flush();
    }

    void word(const std::string& w) { append(first_token_on_line_ ? w : " " + w); first_token_on_line_ = false; }

    void flush() {
        if (!buffer_.empty()) {
            out_ << buffer_ << '\n';
            buffer_.clear();
        }
        first_token_on_line_ = true;
    }

private:
    void append(const std::string& tok) {
        if (buffer_.size() + tok.size() > 200) {
            out_ << buffer_ << '\n';
            buffer_ = " ";
            // A wrapped operator must not start with the sign glued badly;
            // LP format allows breaking between tokens.
            std::string t = tok;
            if (!t.empty() && t[0] == ' ') t = t.substr(1);
            buffer_ += t;
        } else {
            buffer_ += tok;
        }
        first_token_on_line_ = false;
    }

    std::ostream& out_;
    std::string buffer_;
    bool first_term_ = true;
    bool first_token_on_line_ = true;
};

std::string xname(int t1, int f1) { return "x_" + std::to_string(t1) + "_" + std::to_string(f1); }
std::string aname(int t1, int f1) { return "a_" + std::to_string(t1) + "_" + std::to_string(f1); }
std::string yname(const Request& r, int t1) {
    return "y_" + std::to_string(r.user) + "_" + std::to_string(r.index) + "_" +
           std::to_string(t1);
}

} // namespace

void export_lp(const Instance& instance, std::ostream& sink) {
    instance.validate();
    {
        std::set<std::pair<int, int>> ids;
        for (const Request& r : instance.requests)
            if (!ids.emplace(r.user, r.index).second)
                throw ParameterError("export_lp: duplicate (user, index) request id");
    }
    const int T = instance.num_slots, F = instance.num_contents;
    const Cost delta = instance.cost_server - instance.cost_cache;
    LpWriter w(sink);

    w.line("Minimize");
    w.begin(" obj: ");
    Cost constant = 0;
    for (const Request& r : instance.requests) {
        const Cost l = instance.size_of(r.content - 1);
        constant += l * instance.cost_server;
        for (int t = r.origin; t <= r.deadline; ++t) w.term(-l * delta, yname(r, t));
    }
    for (int t = 1; t <= T; ++t)
        for (int f = 1; f <= F; ++f) w.term(instance.size_of(f - 1) * delta, aname(t, f));
    w.constant(constant);
    w.finish("");

    w.line("Subject To");
    for (int t = 1; t <= T; ++t) {
        w.begin(" cap_" + std::to_string(t) + ": ");
        for (int f = 1; f <= F; ++f) w.term(instance.size_of(f - 1), xname(t, f));
        w.finish(" <= " + std::to_string(instance.capacity));
    }
    for (int t = 2; t <= T; ++t) {
        for (int f = 1; f <= F; ++f) {
            w.begin(" lnk1_" + std::to_string(t) + "_" + std::to_string(f) + ": ");
            w.term(1, aname(t, f));
            w.term(-1, xname(t, f));
            w.term(1, xname(t - 1, f));
            w.finish(" >= 0");
            w.begin(" lnk2_" + std::to_string(t) + "_" + std::to_string(f) + ": ");
            w.term(1, aname(t, f));
            w.term(1, xname(t - 1, f));
            w.finish(" <= 1");
            w.begin(" lnk3_" + std::to_string(t) + "_" + std::to_string(f) + ": ");
            w.term(1, aname(t, f));
            w.term(-1, xname(t, f));
            w.finish(" <= 0");
        }
    }
    for (int f = 1; f <= F; ++f) {
        w.begin(" eq_" + std::to_string(f) + ": ");
        w.term(1, aname(1, f));
        w.term(-1, xname(1, f));
        w.finish(" = 0");
    }
    for (const Request& r : instance.requests) {
        const std::string rid = std::to_string(r.user) + "_" + std::to_string(r.index);
        for (int t = r.origin; t <= r.deadline; ++t) {
            w.begin(" srv_" + rid + "_" + std::to_string(t) + ": ");
            w.term(1, yname(r, t));
            w.term(-1, xname(t, r.content));
            w.finish(" <= 0");
        }
        w.begin(" one_" + rid + ": ");
        for (int t = r.origin; t <= r.deadline; ++t) w.term(1, yname(r, t));
        w.finish(" <= 1");
    }

    w.line("Binaries");
    w.begin(" ");
    for (int t = 1; t <= T; ++t)
        for (int f = 1; f <= F; ++f) w.word(xname(t, f));
    for (int t = 1; t <= T; ++t)
        for (int f = 1; f <= F; ++f) w.word(aname(t, f));
    for (const Request& r : instance.requests)
        for (int t = r.origin; t <= r.deadline; ++t) w.word(yname(r, t));
    w.flush();
    w.line("End");
    if (!sink) throw IoError("failed writing LP document");
}

void export_lp_file(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    export_lp(instance, out);
}

} // namespace cachesched
