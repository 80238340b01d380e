#ifndef FTX_SIM_SIMULATOR_HPP
#define FTX_SIM_SIMULATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftx/sim/floor_plan.hpp"
#include "ftx/sim/program.hpp"
#include "ftx/surface_code.hpp"

namespace ftx::sim {

class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, int id) : std::runtime_error(what), instruction(id) {}
    int instruction;
};

// Shortest paths by breadth-first search, or the first path found depth-first.
enum class Routing { BreadthFirst, DepthFirst };

struct SimOptions {
    int s_beats = 2;
    int h_beats = 3;
    int surgery_beats = 2;
    int magic_beats = 1;
    int reaction_beats = 1;
    Routing routing = Routing::BreadthFirst;
    bool trace = false;
    bool check_conflicts = false;
    SynthesisOptions synthesis;
};

// Reaction latency from the hardware reaction time at distance d.
inline int reaction_beats_for(const HardwareSpec& hw, int d)
{
    if (d < 1) throw std::invalid_argument("code distance must be positive");
    return std::max(1, static_cast<int>(std::ceil(hw.reaction_time / (hw.t_cycle * d) - 1e-12)));
}

struct TraceRow {
    std::int64_t beat = 0;
    int id = 0;
    OpKind kind = OpKind::SurgeryMeasure;
    const char* status = "";
};

struct SimResult {
    std::int64_t total_beats = 0;
    std::int64_t stall_beats_routing = 0;
    std::int64_t stall_beats_magic = 0;
    std::int64_t stall_beats_reaction = 0;
    std::int64_t magic_consumed = 0;
    std::int64_t instructions = 0;
    std::vector<TraceRow> trace;
};

inline int duration(const Instruction& in, const SimOptions& o)
{
    switch (in.kind) {
    case OpKind::PrepPauliEigenstate:
    case OpKind::MeasureSingle: return 0;
    case OpKind::SGate: return o.s_beats;
    case OpKind::HGate: return o.h_beats;
    case OpKind::SurgeryMeasure: return o.surgery_beats;
    case OpKind::ConsumeMagic: return o.magic_beats;
    case OpKind::ConditionalClifford: return in.clifford == CliffordKind::S ? o.s_beats : o.surgery_beats;
    }
    return 0;
}

namespace detail {

struct Dag {
    std::vector<std::vector<int>> succ;
    std::vector<int> n_pred;
};

inline Dag build_dag(const std::vector<Instruction>& prog, int n_qubits)
{
    Dag g;
    g.succ.resize(prog.size());
    g.n_pred.assign(prog.size(), 0);
    std::vector<int> last(n_qubits, -1);
    for (std::size_t i = 0; i < prog.size(); i++) {
        const auto& in = prog[i];
        if (in.id != static_cast<int>(i)) throw SimulationError("instruction ids must be sequential", in.id);
        if (in.kind == OpKind::SurgeryMeasure && in.operands.empty())
            throw SimulationError("surgery without operands", in.id);
        std::vector<int> preds;
        for (const auto& f : in.operands) {
            if (f.qubit < 0 || f.qubit >= n_qubits) throw SimulationError("operand not placed", in.id);
            if (last[f.qubit] >= 0) preds.push_back(last[f.qubit]);
            last[f.qubit] = static_cast<int>(i);
        }
        if (in.kind == OpKind::ConditionalClifford) {
            if (in.depends_on < 0 || in.depends_on >= in.id)
                throw SimulationError("dependency must precede the instruction", in.id);
            preds.push_back(in.depends_on);
        }
        std::sort(preds.begin(), preds.end());
        preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
        for (int p : preds) g.succ[p].push_back(static_cast<int>(i));
        g.n_pred[i] = static_cast<int>(preds.size());
    }
    return g;
}

}  // namespace detail

// Longest path through the dependency graph with unlimited magic and routing.
inline std::int64_t critical_path_beats(const std::vector<Instruction>& prog, int n_qubits, const SimOptions& o = {})
{
    auto g = detail::build_dag(prog, n_qubits);
    std::vector<std::int64_t> ready(prog.size(), 0);
    std::int64_t end = 0;
    for (std::size_t i = 0; i < prog.size(); i++) {
        std::int64_t fin = ready[i] + duration(prog[i], o);
        end = std::max(end, fin);
        for (int s : g.succ[i]) {
            std::int64_t lat = fin;
            if (prog[s].kind == OpKind::ConditionalClifford && prog[s].depends_on == static_cast<int>(i))
                lat += o.reaction_beats;
            ready[s] = std::max(ready[s], lat);
        }
    }
    return end;
}

inline std::int64_t supply_bound_beats(std::int64_t magic, const HardwareSpec& hw)
{
    if (magic == 0) return 0;
    if (hw.n_factories < 1) throw std::invalid_argument("program needs magic states but no factory exists");
    return hw.distill_beats * ((magic + hw.n_factories - 1) / hw.n_factories);
}

class Simulator {
public:
    Simulator(const FloorPlan& plan, const HardwareSpec& hw, const SimOptions& o)
        : p_(plan), hw_(hw), o_(o), until_(plan.grid.size(), 0), stamp_(plan.grid.size(), 0),
          from_(plan.grid.size(), -1)
    {
        used_.assign(std::max(0, hw.n_factories), 0);
    }

    SimResult run(const std::vector<Instruction>& prog)
    {
        SimResult res;
        res.instructions = static_cast<std::int64_t>(prog.size());
        if (prog.empty()) return res;
        auto g = detail::build_dag(prog, static_cast<int>(p_.placement.size()));
        for (const auto& in : prog)
            for (const auto& f : in.operands)
                if (p_.placement[f.qubit] < 0) throw SimulationError("operand not placed", in.id);
        for (const auto& in : prog)
            if (in.kind == OpKind::ConsumeMagic && used_.empty())
                throw SimulationError("program consumes magic states but no factory exists", in.id);

        const std::int64_t inf = std::numeric_limits<std::int64_t>::max();
        std::vector<std::int64_t> earliest(prog.size(), 0);
        std::vector<int> pending = g.n_pred;
        std::set<int> ready;
        // finish events: (beat, id)
        std::set<std::pair<std::int64_t, int>> running;
        for (std::size_t i = 0; i < prog.size(); i++)
            if (pending[i] == 0) ready.insert(static_cast<int>(i));
        std::size_t done = 0;
        std::int64_t t = 0;

        auto complete = [&](int id, std::int64_t fin) {
            done++;
            res.total_beats = std::max(res.total_beats, fin);
            if (o_.trace) res.trace.push_back({fin, id, prog[id].kind, "finish"});
            for (int s : g.succ[id]) {
                std::int64_t lat = fin;
                if (prog[s].kind == OpKind::ConditionalClifford && prog[s].depends_on == id) lat += o_.reaction_beats;
                earliest[s] = std::max(earliest[s], lat);
                if (--pending[s] == 0) ready.insert(s);
            }
        };

        while (done < prog.size()) {
            while (!running.empty() && running.begin()->first <= t) {
                auto [fin, id] = *running.begin();
                running.erase(running.begin());
                complete(id, fin);
            }
            bool blocked_route = false, blocked_magic = false, waiting_reaction = false;
            std::int64_t next_ready = inf;
            for (auto it = ready.begin(); it != ready.end();) {
                int id = *it;
                if (earliest[id] > t) {
                    next_ready = std::min(next_ready, earliest[id]);
                    if (prog[id].kind == OpKind::ConditionalClifford) waiting_reaction = true;
                    ++it;
                    continue;
                }
                Outcome oc = try_start(prog[id], t);
                if (oc != Outcome::Started) {
                    (oc == Outcome::NoMagic ? blocked_magic : blocked_route) = true;
                    if (oc == Outcome::NoRoute && running.empty())
                        throw SimulationError("instruction " + std::to_string(id) + " can never be routed", id);
                    ++it;
                    continue;
                }
                it = ready.erase(it);
                if (prog[id].kind == OpKind::ConsumeMagic) res.magic_consumed++;
                if (o_.trace) res.trace.push_back({t, id, prog[id].kind, "start"});
                int dur = duration(prog[id], o_);
                if (dur == 0) {
                    // zero-latency ops release successors within the same beat; later ids are still visited
                    complete(id, t);
                    it = ready.upper_bound(id);
                } else {
                    running.insert({t + dur, id});
                }
            }
            if (o_.check_conflicts) check_reservations(t);
            if (done == prog.size()) break;

            std::int64_t next = next_ready;
            if (!running.empty()) next = std::min(next, running.begin()->first);
            if (blocked_magic) next = std::min(next, next_token_beat(t));
            if (next == inf || next <= t) {
                if (blocked_route && running.empty())
                    throw SimulationError("routing deadlock", *ready.begin());
                next = t + 1;
            }
            std::int64_t span = next - t;
            if (blocked_route) res.stall_beats_routing += span;
            if (blocked_magic) res.stall_beats_magic += span;
            if (waiting_reaction) res.stall_beats_reaction += span;
            t = next;
        }
        return res;
    }

private:
    enum class Outcome { Started, NoRoute, NoMagic };

    const FloorPlan& p_;
    HardwareSpec hw_;
    SimOptions o_;
    std::vector<std::int64_t> until_;  // cell reserved through this beat (exclusive)
    std::vector<std::uint32_t> stamp_;
    std::vector<int> from_;
    std::uint32_t cur_ = 0;
    std::vector<std::int64_t> used_;

    bool open(int c, std::int64_t t) const { return p_.passable(c) && until_[c] <= t; }

    // up, left, right, down
    template <class F>
    void for_neighbors(int c, F&& f) const
    {
        int r = c / p_.cols, k = c % p_.cols;
        if (r > 0) f(c - p_.cols);
        if (k > 0) f(c - 1);
        if (k + 1 < p_.cols) f(c + 1);
        if (r + 1 < p_.rows) f(c + p_.cols);
    }

    std::int64_t tokens(int f, std::int64_t t) const { return t / hw_.distill_beats - used_[f]; }

    std::int64_t next_token_beat(std::int64_t t) const
    {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (std::size_t f = 0; f < used_.size(); f++)
            best = std::min(best, (used_[f] + 1) * hw_.distill_beats);
        return std::max(best, t + 1);
    }

    // BFS from the given open cells to any open cell adjacent to patch `goal`; returns the path.
    std::vector<int> bfs(const std::vector<int>& sources, int goal, std::int64_t t)
    {
        if (++cur_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            cur_ = 1;
        }
        std::vector<int> goal_adj;
        for_neighbors(goal, [&](int n) {
            if (open(n, t)) goal_adj.push_back(n);
        });
        if (goal_adj.empty()) return {};
        std::deque<int> q;
        const bool depth = o_.routing == Routing::DepthFirst;
        for (int s : sources) {
            if (stamp_[s] == cur_) continue;
            stamp_[s] = cur_;
            from_[s] = -1;
            q.push_back(s);
        }
        if (depth) std::reverse(q.begin(), q.end());
        while (!q.empty()) {
            int c;
            if (depth) {
                c = q.back();
                q.pop_back();
            } else {
                c = q.front();
                q.pop_front();
            }
            if (std::find(goal_adj.begin(), goal_adj.end(), c) != goal_adj.end()) {
                std::vector<int> path;
                for (int x = c; x >= 0; x = from_[x]) path.push_back(x);
                return path;
            }
            std::size_t mark = q.size();
            for_neighbors(c, [&](int n) {
                if (stamp_[n] == cur_ || !open(n, t)) return;
                stamp_[n] = cur_;
                from_[n] = c;
                q.push_back(n);
            });
            // explore in neighbor order when popping from the back
            if (depth) std::reverse(q.begin() + static_cast<std::ptrdiff_t>(mark), q.end());
        }
        return {};
    }

    std::vector<int> open_neighbors(int patch, std::int64_t t) const
    {
        std::vector<int> v;
        for_neighbors(patch, [&](int n) {
            if (open(n, t)) v.push_back(n);
        });
        return v;
    }

    // Steiner-style tree joining all operand patches, grown one operand at a time.
    bool route_tree(const std::vector<int>& patches, std::vector<int>& cells, std::int64_t t)
    {
        cells.clear();
        if (patches.size() == 1) {
            auto nb = open_neighbors(patches[0], t);
            if (nb.empty()) return false;
            cells.push_back(nb[0]);
            return true;
        }
        std::vector<int> sources = open_neighbors(patches[0], t);
        for (std::size_t k = 1; k < patches.size(); k++) {
            if (sources.empty()) return false;
            auto path = bfs(sources, patches[k], t);
            if (path.empty()) return false;
            for (int c : path) {
                if (std::find(cells.begin(), cells.end(), c) == cells.end()) cells.push_back(c);
            }
            sources = cells;
            for (std::size_t j = 0; j <= k; j++)
                for (int n : open_neighbors(patches[j], t))
                    if (std::find(sources.begin(), sources.end(), n) == sources.end()) sources.push_back(n);
        }
        return true;
    }

    void reserve(const std::vector<int>& cells, std::int64_t until)
    {
        for (int c : cells) until_[c] = until;
    }

    Outcome try_start(const Instruction& in, std::int64_t t)
    {
        int dur = duration(in, o_);
        std::vector<int> cells;
        switch (in.kind) {
        case OpKind::PrepPauliEigenstate:
        case OpKind::MeasureSingle: return Outcome::Started;
        case OpKind::ConsumeMagic: {
            int target = p_.placement[in.operands[0].qubit];
            bool any_token = false;
            for (std::size_t f = 0; f < used_.size(); f++) {
                if (tokens(static_cast<int>(f), t) <= 0) continue;
                any_token = true;
                int port = p_.factory_ports[f];
                if (!open(port, t)) continue;
                auto path = bfs({port}, target, t);
                if (path.empty()) continue;
                used_[f]++;
                reserve(path, t + dur);
                return Outcome::Started;
            }
            return any_token ? Outcome::NoRoute : Outcome::NoMagic;
        }
        case OpKind::SGate:
        case OpKind::HGate:
        case OpKind::SurgeryMeasure:
        case OpKind::ConditionalClifford: {
            std::vector<int> patches;
            for (const auto& f : in.operands) patches.push_back(p_.placement[f.qubit]);
            if (!route_tree(patches, cells, t)) return Outcome::NoRoute;
            reserve(cells, t + dur);
            return Outcome::Started;
        }
        }
        return Outcome::NoRoute;
    }

    void check_reservations(std::int64_t t) const
    {
        for (std::size_t c = 0; c < until_.size(); c++)
            if (until_[c] > t && !p_.passable(static_cast<int>(c)))
                throw SimulationError("reservation on a non-corridor cell", -1);
    }
};

inline SimResult simulate(const FloorPlan& plan, const std::vector<Instruction>& program, const HardwareSpec& hw,
                          const SimOptions& opts = {})
{
    if (hw.distill_beats < 1) throw std::invalid_argument("distill_beats must be positive");
    Simulator s(plan, hw, opts);
    return s.run(program);
}

struct SelectRun {
    SimResult result;
    std::int64_t magic_expected = 0;
    std::int64_t supply_bound = 0;
    std::int64_t critical_path = 0;
};

// Floor plan, SELECT program and simulation for one configuration.
inline SelectRun simulate_select(const TermTable& table, const HardwareSpec& hw, const SimOptions& opts = {},
                                 const FloorPlanOptions& fo = {})
{
    SelectRun out;
    FloorPlan plan = build_floor_plan(table, hw, fo);
    std::string err = check_floor_plan(plan, hw);
    if (!err.empty()) throw SimulationError("illegal floor plan: " + err, -1);
    ProgramStats st;
    auto prog = synthesize_select(table, plan.regs, &st, opts.synthesis);
    out.magic_expected = st.magic;
    out.supply_bound = supply_bound_beats(st.magic, hw);
    out.critical_path = critical_path_beats(prog, plan.regs.n_qubits, opts);
    out.result = simulate(plan, prog, hw, opts);
    return out;
}

inline void write_trace_csv(std::ostream& os, const SimResult& r)
{
    os << "beat,instruction_id,kind,status\n";
    for (const auto& row : r.trace) os << row.beat << ',' << row.id << ',' << to_string(row.kind) << ',' << row.status << '\n';
}

}  // namespace ftx::sim

#endif  // FTX_SIM_SIMULATOR_HPP
