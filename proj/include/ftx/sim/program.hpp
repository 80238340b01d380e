#ifndef FTX_SIM_PROGRAM_HPP
#define FTX_SIM_PROGRAM_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftx/lattice.hpp"
#include "ftx/sim/floor_plan.hpp"

namespace ftx::sim {

enum class OpKind : std::uint8_t {
    PrepPauliEigenstate,
    MeasureSingle,
    SGate,
    HGate,
    SurgeryMeasure,
    ConsumeMagic,
    ConditionalClifford,
};

enum class CliffordKind : std::uint8_t { S, CZ };

inline const char* to_string(OpKind k)
{
    switch (k) {
    case OpKind::PrepPauliEigenstate: return "prep";
    case OpKind::MeasureSingle: return "measure";
    case OpKind::SGate: return "s";
    case OpKind::HGate: return "h";
    case OpKind::SurgeryMeasure: return "surgery";
    case OpKind::ConsumeMagic: return "magic";
    case OpKind::ConditionalClifford: return "conditional";
    }
    return "?";
}

struct Instruction {
    int id = 0;
    OpKind kind = OpKind::SurgeryMeasure;
    std::vector<PauliFactor> operands;
    int depends_on = -1;        // measurement id for ConditionalClifford
    bool with_magic = false;    // SurgeryMeasure against a delivered magic state
    CliffordKind clifford = CliffordKind::S;
    int thread = 0;
};

// Controlled-Pauli leaves: one two-body surgery per support qubit, or one multi-body measurement.
enum class LeafForm { TwoBody, MultiBody };

// How per-thread streams are laid into the single instruction sequence.
enum class ThreadMerge { RoundRobin, Concatenate };

struct SynthesisOptions {
    LeafForm leaf = LeafForm::TwoBody;
    ThreadMerge merge = ThreadMerge::RoundRobin;
};

struct ProgramStats {
    std::int64_t magic = 0;
    std::int64_t ands = 0;
};

namespace detail {

class Emitter {
public:
    std::vector<Instruction> ops;
    std::int64_t magic = 0;
    std::int64_t ands = 0;
    int thread = 0;

    int emit(Instruction in)
    {
        in.id = static_cast<int>(ops.size());
        in.thread = thread;
        ops.push_back(std::move(in));
        return ops.back().id;
    }
    int single(OpKind k, int q, Axis a = Axis::Z)
    {
        Instruction in;
        in.kind = k;
        in.operands = {{q, a}};
        return emit(std::move(in));
    }
    int surgery(std::vector<PauliFactor> f, bool magic_state = false)
    {
        Instruction in;
        in.kind = OpKind::SurgeryMeasure;
        in.operands = std::move(f);
        in.with_magic = magic_state;
        return emit(std::move(in));
    }
    int cnot(int c, int t) { return surgery({{c, Axis::Z}, {t, Axis::X}}); }
    int consume(int q)
    {
        magic++;
        return single(OpKind::ConsumeMagic, q);
    }
    int conditional(CliffordKind k, std::vector<int> qs, int dep)
    {
        Instruction in;
        in.kind = OpKind::ConditionalClifford;
        in.clifford = k;
        for (int q : qs) in.operands.push_back({q, Axis::Z});
        in.depends_on = dep;
        return emit(std::move(in));
    }
    // Teleported T: magic state, ZZ surgery, S correction after the reaction delay.
    void t_gate(int q)
    {
        consume(q);
        int m = surgery({{q, Axis::Z}}, true);
        conditional(CliffordKind::S, {q}, m);
    }
    // target <- c1 AND c2, 4 T.
    void logical_and(int target, int c1, int c2)
    {
        ands++;
        consume(target);
        cnot(c1, target);
        cnot(c2, target);
        cnot(target, c1);
        cnot(target, c2);
        t_gate(c1);
        t_gate(c2);
        t_gate(target);
        cnot(target, c1);
        cnot(target, c2);
        single(OpKind::HGate, target);
        single(OpKind::SGate, target);
    }
    // Measurement-based uncompute, no T.
    void logical_unand(int target, int c1, int c2)
    {
        int m = single(OpKind::MeasureSingle, target, Axis::X);
        conditional(CliffordKind::CZ, {c1, c2}, m);
    }
};

struct UnaryIteration {
    Emitter& e;
    const ThreadRegisters& tr;
    const std::vector<const PauliTerm*>& terms;
    LeafForm form = LeafForm::TwoBody;

    void leaf(int ctrl, std::size_t local)
    {
        const PauliTerm& t = *terms[tr.first_term + local];
        if (form == LeafForm::TwoBody) {
            for (const auto& f : t.factors) {
                if (f.axis != Axis::Y) {
                    e.surgery({{ctrl, Axis::Z}, f});
                    continue;
                }
                // no Y boundary on a patch: conjugate X by S
                e.single(OpKind::SGate, f.qubit);
                e.surgery({{ctrl, Axis::Z}, {f.qubit, Axis::X}});
                e.single(OpKind::SGate, f.qubit);
            }
            return;
        }
        std::vector<PauliFactor> f;
        f.push_back({ctrl, Axis::Z});
        f.insert(f.end(), t.factors.begin(), t.factors.end());
        e.surgery(std::move(f));
    }

    void run(int ctrl, int level, std::size_t base, std::size_t size, std::size_t count)
    {
        if (count == 0) return;
        if (size == 1) {
            leaf(ctrl, base);
            return;
        }
        std::size_t half = size / 2;
        std::size_t left = std::min(count, half), right = count - left;
        if (right == 0) {
            run(ctrl, level + 1, base, half, left);
            return;
        }
        int a = tr.anc[level];
        int bit = tr.idx[level];
        e.logical_and(a, ctrl, bit);  // a = ctrl AND NOT bit, negation tracked in the frame
        run(a, level + 1, base, half, left);
        e.cnot(ctrl, a);  // a = ctrl AND bit
        run(a, level + 1, base + half, half, right);
        e.logical_unand(a, ctrl, bit);
    }
};

inline bool support_less(const PauliTerm* a, const PauliTerm* b)
{
    auto key = [](const PauliTerm* t) {
        std::vector<int> q;
        for (const auto& f : t->factors) q.push_back(f.qubit);
        std::sort(q.begin(), q.end());
        return q;
    };
    return key(a) < key(b);
}

}  // namespace detail

// Terms ordered by ascending support, the order threads partition.
inline std::vector<const PauliTerm*> sorted_terms(const TermTable& table)
{
    std::vector<const PauliTerm*> v;
    for (const auto& t : table.terms) v.push_back(&t);
    std::stable_sort(v.begin(), v.end(), detail::support_less);
    return v;
}

inline std::vector<Instruction> synthesize_select(const TermTable& table, const SelectRegisters& regs,
                                                  ProgramStats* stats = nullptr, const SynthesisOptions& so = {})
{
    if (table.count == 0) return {};
    if (regs.threads < 1 || static_cast<std::size_t>(regs.threads) > table.count)
        throw std::invalid_argument("synthesize_select: require 1 <= b <= L");
    auto terms = sorted_terms(table);
    detail::Emitter global;
    std::int64_t magic = 0, ands = 0;

    if (regs.threads == 1) {
        const auto& tr = regs.thread[0];
        detail::UnaryIteration it{global, tr, terms, so.leaf};
        it.run(tr.ctrl, 0, 0, std::size_t{1} << regs.low_bits, tr.n_terms);
        if (stats) *stats = {global.magic, global.ands};
        return std::move(global.ops);
    }

    // CopyIndex: fan each global bit out to the thread copies by CNOT doubling
    auto fan_out = [&](int src, const std::vector<int>& dst) {
        std::vector<int> holders{src};
        std::size_t next = 0;
        while (next < dst.size()) {
            std::size_t h = holders.size();
            for (std::size_t i = 0; i < h && next < dst.size(); i++) {
                global.cnot(holders[i], dst[next]);
                holders.push_back(dst[next++]);
            }
        }
    };
    {
        std::vector<int> d;
        for (const auto& tr : regs.thread) d.push_back(tr.ctrl);
        fan_out(regs.global_ctrl, d);
    }
    for (int j = 0; j < regs.top_bits; j++) {
        std::vector<int> d;
        for (const auto& tr : regs.thread) d.push_back(tr.top[j]);
        fan_out(regs.global_top[j], d);
    }
    for (int j = 0; j < regs.low_bits; j++) {
        std::vector<int> d;
        for (const auto& tr : regs.thread) d.push_back(tr.idx[j]);
        fan_out(regs.global_low[j], d);
    }

    std::vector<detail::Emitter> per(regs.threads);
    for (int t = 0; t < regs.threads; t++) {
        const auto& tr = regs.thread[t];
        auto& e = per[t];
        e.thread = t;
        if (tr.n_terms == 0) continue;
        int ctrl = tr.ctrl;
        for (int j = 0; j < regs.top_bits; j++) {
            e.logical_and(tr.act[j], ctrl, tr.top[j]);
            ctrl = tr.act[j];
        }
        detail::UnaryIteration it{e, tr, terms, so.leaf};
        it.run(ctrl, 0, 0, std::size_t{1} << regs.low_bits, tr.n_terms);
        for (int j = regs.top_bits - 1; j >= 0; j--)
            e.logical_unand(tr.act[j], j == 0 ? tr.ctrl : tr.act[j - 1], tr.top[j]);
        magic += e.magic;
        ands += e.ands;
    }

    std::vector<Instruction> out = std::move(global.ops);
    const std::size_t n_global = out.size();
    std::vector<std::vector<int>> remap(regs.threads);
    for (int t = 0; t < regs.threads; t++) remap[t].assign(per[t].ops.size(), -1);
    std::vector<std::size_t> pos(regs.threads, 0);
    auto take = [&](int t) {
        remap[t][pos[t]] = static_cast<int>(out.size());
        out.push_back(per[t].ops[pos[t]++]);
    };
    if (so.merge == ThreadMerge::Concatenate) {
        for (int t = 0; t < regs.threads; t++)
            while (pos[t] < per[t].ops.size()) take(t);
    } else {
        bool any = true;
        while (any) {
            any = false;
            for (int t = 0; t < regs.threads; t++) {
                if (pos[t] >= per[t].ops.size()) continue;
                any = true;
                take(t);
            }
        }
    }
    for (std::size_t i = n_global; i < out.size(); i++) {
        auto& in = out[i];
        if (in.depends_on >= 0) in.depends_on = remap[in.thread][in.depends_on];
        in.id = static_cast<int>(i);
    }

    // uncopy: X measurements, corrections stay in the Pauli frame
    for (const auto& tr : regs.thread) {
        Instruction m;
        m.kind = OpKind::MeasureSingle;
        m.operands = {{tr.ctrl, Axis::X}};
        for (int q : tr.top) m.operands.push_back({q, Axis::X});
        for (int q : tr.idx) m.operands.push_back({q, Axis::X});
        m.id = static_cast<int>(out.size());
        m.thread = tr.thread_code;
        out.push_back(std::move(m));
    }
    magic += global.magic;
    if (stats) *stats = {magic, ands};
    return out;
}

inline std::vector<Instruction> synthesize_select(const TermTable& table, int threads, ProgramStats* stats = nullptr,
                                                  const SynthesisOptions& so = {})
{
    return synthesize_select(table, select_registers(table.count, table.n_system, threads), stats, so);
}

inline std::int64_t count_magic(const std::vector<Instruction>& prog)
{
    return std::count_if(prog.begin(), prog.end(), [](const Instruction& i) { return i.kind == OpKind::ConsumeMagic; });
}

}  // namespace ftx::sim

#endif  // FTX_SIM_PROGRAM_HPP
