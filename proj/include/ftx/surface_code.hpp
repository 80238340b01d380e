#ifndef FTX_SURFACE_CODE_HPP
#define FTX_SURFACE_CODE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ftx/algorithms.hpp"
#include "ftx/gate_costs.hpp"

namespace ftx {

enum class OpCountUnit { Cycles, Beats };

struct HardwareSpec {
    double p_phys = 1e-3;
    double p_th = 1e-2;
    double t_cycle = 1e-6;
    double reaction_time = 10e-6;
    int n_factories = 1;
    int factory_area = 176;
    int distill_beats = 15;
    int threads = 1;
    int d_max = 99;
    OpCountUnit op_unit = OpCountUnit::Cycles;
};

struct CodePlan {
    int d = 0;
    std::int64_t n_log = 0;
    double n_op = 0.0;
    double n_ph = 0.0;
    double p_log = 0.0;
};

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void validate(const HardwareSpec& hw)
{
    if (!(hw.p_phys > 0.0)) throw std::invalid_argument("p_phys must be positive");
    if (!(hw.t_cycle > 0.0) || !(hw.reaction_time > 0.0)) throw std::invalid_argument("times must be positive");
    if (hw.n_factories < 0 || hw.threads < 1 || hw.distill_beats < 1)
        throw std::invalid_argument("invalid factory or thread count");
}

inline double logical_error_rate(double p, double p_th, int d)
{
    return 0.1 * std::pow(p / p_th, (d + 1) / 2.0);
}

namespace detail {

// Smallest odd d with p_log(d) <= 1/n_op(d).
template <class OpCount>
CodePlan solve_distance(OpCount&& n_op_of, std::int64_t n_log, const HardwareSpec& hw)
{
    validate(hw);
    if (hw.p_phys >= hw.p_th) throw InfeasibleError("physical error rate above threshold");
    for (int d = 1; d <= hw.d_max; d += 2) {
        double nop = n_op_of(d);
        double pl = logical_error_rate(hw.p_phys, hw.p_th, d);
        if (pl * nop <= 1.0) {
            CodePlan c;
            c.d = d;
            c.n_log = n_log;
            c.n_op = nop;
            c.p_log = pl;
            return c;
        }
    }
    throw InfeasibleError("no code distance up to d_max satisfies the logical error target");
}

}  // namespace detail

inline CodePlan solve_code_distance(std::int64_t n_log_involved, std::int64_t beats_per_select, std::int64_t r,
                                    const HardwareSpec& hw)
{
    if (n_log_involved < 1 || beats_per_select < 1 || r < 1)
        throw std::invalid_argument("solve_code_distance: counts must be positive");
    double base = static_cast<double>(n_log_involved) * static_cast<double>(beats_per_select) * static_cast<double>(r);
    return detail::solve_distance(
        [&](int d) { return hw.op_unit == OpCountUnit::Cycles ? base * d : base; }, n_log_involved, hw);
}

inline std::int64_t physical_qubits_rough(std::int64_t n_log, int d) { return 2LL * d * d * n_log; }

inline CodePlan solve_code_distance_rough(std::int64_t n_log, double t_count, const HardwareSpec& hw)
{
    if (n_log < 1 || !(t_count >= 1.0)) throw std::invalid_argument("solve_code_distance_rough: counts must be positive");
    double base = static_cast<double>(n_log) * t_count * hw.distill_beats;
    CodePlan c = detail::solve_distance(
        [&](int d) { return hw.op_unit == OpCountUnit::Cycles ? base * d : base; }, n_log, hw);
    c.n_ph = static_cast<double>(physical_qubits_rough(n_log, c.d));
    return c;
}

inline double physical_qubits_detailed(std::int64_t n_system, int log_l, const HardwareSpec& hw, int d)
{
    double cells = 2.25 * n_system + 1.5 * (4.0 * hw.threads + 1.0) * log_l +
                   static_cast<double>(hw.n_factories) * hw.factory_area;
    return std::round(cells * 2.0 * d * d);
}

enum class InvolvedConvention { FloorPlan, Minimal };

// Logical qubits touched by one SELECT: system qubits with their share of routing space plus the
// per-thread control arrays.
inline std::int64_t select_logical_qubits(std::int64_t n_system, int log_l, int threads, int m,
                                          InvolvedConvention conv = InvolvedConvention::FloorPlan)
{
    if (conv == InvolvedConvention::Minimal) return n_system + (2LL * log_l - 1) + m;
    return n_system + (n_system + 3) / 4 + 3LL * threads * log_l + m;
}

struct DistanceBracket {
    int d_low = 0;   // at 0.7 x n_log_involved
    int d_high = 0;  // at 1.3 x n_log_involved
};

inline DistanceBracket distance_sensitivity(std::int64_t n_log_involved, std::int64_t beats, std::int64_t r,
                                            const HardwareSpec& hw)
{
    auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(0.7 * n_log_involved)));
    auto hi = static_cast<std::int64_t>(std::ceil(1.3 * n_log_involved));
    return {solve_code_distance(lo, beats, r, hw).d, solve_code_distance(hi, beats, r, hw).d};
}

inline double runtime_estimate(int d, std::int64_t beats_per_select, std::int64_t r, const HardwareSpec& hw)
{
    return hw.t_cycle * d * static_cast<double>(beats_per_select) * static_cast<double>(r);
}

struct ClosedFormRuntimes {
    double t_count_limited = 0.0;
    double reaction_limited = 0.0;
};

// Per-SELECT runtime when bound by one factory (4L magic states) or by reaction latency across b threads.
inline ClosedFormRuntimes runtime_closed_forms(std::int64_t l, int d, int b, const HardwareSpec& hw)
{
    if (b < 1) throw std::invalid_argument("runtime_closed_forms: b >= 1");
    double magic = 4.0 * static_cast<double>(l);
    return {hw.distill_beats * d * hw.t_cycle * magic, hw.reaction_time * magic / b};
}

struct SweepCell {
    double epsilon = 0.0;
    double p = 0.0;
    bool feasible = false;
    int d = 0;
    double n_ph = 0.0;
    double runtime_s = 0.0;
    std::int64_t r = 0;
    std::int64_t n_log = 0;
    std::string note;
};

struct SweepInputs {
    TermTable table;
    AlgorithmKind algorithm = AlgorithmKind::QubitizationSequential;
    std::vector<double> epsilons;
    std::vector<double> ps;
    HardwareSpec hw;
    CostOptions cost;
    std::int64_t beats_per_select = 0;  // qubitization only
    InvolvedConvention involved = InvolvedConvention::FloorPlan;
};

inline SweepCell sweep_cell(const SweepInputs& in, double eps, double p)
{
    SweepCell c;
    c.epsilon = eps;
    c.p = p;
    HardwareSpec hw = in.hw;
    hw.p_phys = p;
    try {
        CostReport rep = estimate(in.table, in.algorithm, eps, in.cost);
        c.r = rep.r;
        if (is_qubitization(in.algorithm) && in.beats_per_select > 0) {
            int log_l = ceil_log2(static_cast<std::int64_t>(in.table.count));
            std::int64_t n = select_logical_qubits(in.table.n_system, log_l, hw.threads, rep.budget.m, in.involved);
            CodePlan plan = solve_code_distance(n, in.beats_per_select, rep.r, hw);
            c.d = plan.d;
            c.n_log = n;
            c.n_ph = physical_qubits_detailed(in.table.n_system, log_l, hw, plan.d);
            c.runtime_s = runtime_estimate(plan.d, in.beats_per_select, rep.r, hw);
        } else {
            CodePlan plan = solve_code_distance_rough(rep.n_logical, static_cast<double>(rep.t_count_total), hw);
            c.d = plan.d;
            c.n_log = rep.n_logical;
            c.n_ph = plan.n_ph;
            c.runtime_s = static_cast<double>(rep.t_count_total) * hw.distill_beats * plan.d * hw.t_cycle /
                          std::max(1, hw.n_factories);
        }
        c.feasible = true;
    } catch (const InfeasibleError& e) {
        c.feasible = false;
        c.note = e.what();
    }
    return c;
}

// Row-major over (epsilon, p).
inline std::vector<SweepCell> sweep_grid(const SweepInputs& in, int workers = 1)
{
    if (in.epsilons.empty() || in.ps.empty()) throw std::invalid_argument("sweep_grid: empty grid");
    std::size_t n = in.epsilons.size() * in.ps.size();
    std::vector<SweepCell> out(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            out[i] = sweep_cell(in, in.epsilons[i / in.ps.size()], in.ps[i % in.ps.size()]);
    };
    workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; w++) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace ftx

#endif  // FTX_SURFACE_CODE_HPP
