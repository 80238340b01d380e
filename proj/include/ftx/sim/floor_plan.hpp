#ifndef FTX_SIM_FLOOR_PLAN_HPP
#define FTX_SIM_FLOOR_PLAN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftx/gate_costs.hpp"
#include "ftx/lattice.hpp"
#include "ftx/surface_code.hpp"

namespace ftx::sim {

enum class CellRole : std::uint8_t { Free, System, Control, Corridor, Factory };

inline char role_char(CellRole r)
{
    switch (r) {
    case CellRole::Free: return ' ';
    case CellRole::System: return 'S';
    case CellRole::Control: return 'C';
    case CellRole::Corridor: return '.';
    case CellRole::Factory: return 'F';
    }
    return '?';
}

// Qubit ids of one SELECT thread. For a single thread the global registers are used directly.
struct ThreadRegisters {
    int ctrl = -1;
    std::vector<int> top;  // thread-select bits
    std::vector<int> act;  // activation AND chain
    std::vector<int> idx;  // local index bits, most significant first
    std::vector<int> anc;  // unary-iteration carries, one per level
    std::size_t first_term = 0;
    std::size_t n_terms = 0;
    int thread_code = 0;
};

struct SelectRegisters {
    int n_system = 0;
    int n_qubits = 0;
    int threads = 1;
    int top_bits = 0;
    int low_bits = 0;
    int global_ctrl = -1;
    std::vector<int> global_top;
    std::vector<int> global_low;
    std::vector<ThreadRegisters> thread;
};

inline SelectRegisters select_registers(std::size_t n_terms, int n_system, int threads)
{
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (n_terms >= 1 && static_cast<std::size_t>(threads) > n_terms)
        throw std::invalid_argument("thread count exceeds term count");
    SelectRegisters r;
    r.n_system = n_system;
    r.threads = threads;
    std::size_t block = n_terms == 0 ? 0 : (n_terms + threads - 1) / threads;
    r.top_bits = threads > 1 ? ceil_log2(threads) : 0;
    r.low_bits = ceil_log2(static_cast<std::int64_t>(std::max<std::size_t>(block, 1)));
    int next = n_system;
    auto take = [&](int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; i++) v[i] = next++;
        return v;
    };
    r.global_ctrl = next++;
    r.global_top = take(r.top_bits);
    r.global_low = take(r.low_bits);
    for (int t = 0; t < threads; t++) {
        ThreadRegisters tr;
        tr.thread_code = t;
        tr.first_term = std::min(n_terms, static_cast<std::size_t>(t) * block);
        tr.n_terms = std::min(n_terms, tr.first_term + block) - tr.first_term;
        if (threads == 1) {
            tr.ctrl = r.global_ctrl;
            tr.idx = r.global_low;
        } else {
            tr.ctrl = next++;
            tr.top = take(r.top_bits);
            tr.act = take(r.top_bits);
            tr.idx = take(r.low_bits);
        }
        tr.anc = take(r.low_bits);
        r.thread.push_back(std::move(tr));
    }
    r.n_qubits = next;
    return r;
}

struct Region {
    int row0 = 0, col0 = 0, rows = 0, cols = 0;
};

struct FloorPlan {
    int rows = 0;
    int cols = 0;
    std::vector<CellRole> grid;
    std::vector<int> placement;  // qubit id -> cell index
    std::vector<int> factory_ports;
    Region factory, control, system;
    SelectRegisters regs;

    int cell(int r, int c) const { return r * cols + c; }
    CellRole role(int idx) const { return grid[idx]; }
    bool passable(int idx) const { return grid[idx] == CellRole::Corridor || grid[idx] == CellRole::Free; }
};

namespace detail {

// Logical position i maps to 1 + i + i/2: pairs of patches separated by corridor lines.
inline int dilate(int i) { return 1 + i + i / 2; }
inline int dilated_extent(int n) { return n == 0 ? 1 : 1 + n + (n + 1) / 2; }

struct LogicalGrid {
    int width = 0, height = 0;
    std::vector<std::pair<int, int>> pos;  // (col, row) per listed qubit
    std::vector<int> ids;
};

inline LogicalGrid system_grid(const TermTable& t)
{
    LogicalGrid g;
    int n = t.n_system;
    g.pos.resize(n);
    g.ids.resize(n);
    if (t.kind == ModelKind::Chain) {
        int c = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
        g.width = c;
        g.height = (n + c - 1) / c;
        for (int q = 0; q < n; q++) {
            int row = q / c, col = q % c;
            if (row % 2 == 1) col = c - 1 - col;
            g.pos[q] = {col, row};
            g.ids[q] = q;
        }
        return g;
    }
    int per = t.qubits_per_site;
    g.width = t.width * per;
    g.height = t.height;
    for (int q = 0; q < n; q++) {
        const auto& qc = t.coords[q];
        g.pos[q] = {qc.x * per + qc.sub, qc.y};
        g.ids[q] = q;
    }
    return g;
}

// One-wide thread array, top to bottom: control, activation chain, then index and carry
// cells interleaved so the tail carries face the system.
inline std::vector<int> thread_strip(const ThreadRegisters& tr)
{
    std::vector<int> col{tr.ctrl};
    for (std::size_t j = 0; j < tr.top.size(); j++) {
        col.push_back(tr.top[j]);
        col.push_back(tr.act[j]);
    }
    for (std::size_t j = 0; j < tr.anc.size(); j++) {
        if (j < tr.idx.size()) col.push_back(tr.idx[j]);
        col.push_back(tr.anc[j]);
    }
    return col;
}

// Two-wide column block, listed top to bottom; -1 leaves an empty slot.
inline std::vector<int> thread_column(const ThreadRegisters& tr)
{
    std::vector<int> col;
    col.push_back(tr.ctrl);
    col.push_back(-1);
    for (std::size_t j = 0; j < tr.top.size(); j++) {
        col.push_back(tr.top[j]);
        col.push_back(tr.act[j]);
    }
    for (std::size_t j = 0; j < tr.anc.size(); j++) {
        col.push_back(j < tr.idx.size() ? tr.idx[j] : -1);
        col.push_back(tr.anc[j]);
    }
    return col;
}

inline std::vector<int> hub_column(const SelectRegisters& r)
{
    std::vector<int> col;
    col.push_back(r.global_ctrl);
    col.push_back(-1);
    std::vector<int> rest = r.global_top;
    rest.insert(rest.end(), r.global_low.begin(), r.global_low.end());
    for (int q : rest) col.push_back(q);
    if (col.size() % 2) col.push_back(-1);
    return col;
}

}  // namespace detail

enum class ControlLayout { Strip, Block };

struct FloorPlanOptions {
    int factory_width = 16;
    int factory_height = 11;
    ControlLayout control = ControlLayout::Strip;
};

inline FloorPlan build_floor_plan(const TermTable& table, const HardwareSpec& hw, const FloorPlanOptions& fo = {})
{
    if (fo.factory_width * fo.factory_height < hw.factory_area)
        throw std::invalid_argument("factory block smaller than factory area");
    FloorPlan p;
    p.regs = select_registers(table.count, table.n_system, hw.threads);
    const auto& regs = p.regs;

    // control blocks: threads left to right, hub in the middle when threaded
    const int span = fo.control == ControlLayout::Strip ? 1 : 2;
    std::vector<std::vector<int>> blocks;
    for (const auto& tr : regs.thread)
        blocks.push_back(span == 1 ? detail::thread_strip(tr) : detail::thread_column(tr));
    if (regs.threads > 1) {
        auto hub = detail::hub_column(regs);
        if (span == 1) hub.erase(std::remove(hub.begin(), hub.end(), -1), hub.end());
        blocks.insert(blocks.begin() + blocks.size() / 2, hub);
    }
    int ctrl_lrows = 0;
    for (const auto& b : blocks)
        ctrl_lrows = std::max<int>(ctrl_lrows, (static_cast<int>(b.size()) + span - 1) / span);
    int ctrl_lcols = span * static_cast<int>(blocks.size());

    detail::LogicalGrid sg = detail::system_grid(table);

    int ctrl_w = detail::dilated_extent(ctrl_lcols), ctrl_h = detail::dilated_extent(ctrl_lrows);
    int sys_w = detail::dilated_extent(sg.width), sys_h = detail::dilated_extent(sg.height);
    int inner_w = std::max(ctrl_w, sys_w);

    int nf = std::max(0, hw.n_factories);
    int fpitch = fo.factory_width + 1;
    int per_row = nf == 0 ? 0 : std::clamp(inner_w / fpitch, 1, nf);
    int frows = per_row == 0 ? 0 : (nf + per_row - 1) / per_row;
    int fac_w = per_row == 0 ? 0 : per_row * fpitch + 1;
    int fac_h = frows * (fo.factory_height + 1);

    p.cols = std::max(inner_w, fac_w);
    // factory bands on top; the last port row doubles as the control part's top border,
    // and control and system share a border row
    int ctrl_row0 = fac_h > 0 ? fac_h - 1 : 0;
    p.rows = ctrl_row0 + ctrl_h + sys_h - 1;
    p.grid.assign(static_cast<std::size_t>(p.rows) * p.cols, CellRole::Free);
    p.placement.assign(regs.n_qubits, -1);

    p.factory = {0, (p.cols - fac_w) / 2, fac_h, fac_w};
    for (int f = 0; f < nf; f++) {
        int band = frows - 1 - f / per_row;  // first factories nearest the control part
        int r0 = band * (fo.factory_height + 1);
        int c0 = p.factory.col0 + 1 + (f % per_row) * fpitch;
        for (int r = 0; r < fo.factory_height; r++)
            for (int c = 0; c < fo.factory_width; c++)
                p.grid[p.cell(r0 + r, c0 + c)] = CellRole::Factory;
        p.factory_ports.push_back(p.cell(r0 + fo.factory_height, c0 + fo.factory_width / 2));
    }

    auto paint = [&](const Region& reg) {
        for (int r = 0; r < reg.rows; r++)
            for (int c = 0; c < reg.cols; c++)
                p.grid[p.cell(reg.row0 + r, reg.col0 + c)] = CellRole::Corridor;
    };
    p.control = {ctrl_row0, (p.cols - ctrl_w) / 2, ctrl_h, ctrl_w};
    p.system = {ctrl_row0 + ctrl_h - 1, (p.cols - sys_w) / 2, sys_h, sys_w};
    paint(p.control);
    paint(p.system);
    if (fac_h > 0)
        for (int c = 0; c < p.cols; c++) p.grid[p.cell(ctrl_row0, c)] = CellRole::Corridor;

    for (std::size_t b = 0; b < blocks.size(); b++) {
        const auto& col = blocks[b];
        int brows = (static_cast<int>(col.size()) + span - 1) / span;
        int roff = ctrl_lrows - brows;  // bottom-aligned: tail carries face the system
        for (std::size_t k = 0; k < col.size(); k++) {
            if (col[k] < 0) continue;
            int lr = roff + static_cast<int>(k) / span;
            int lc = span * static_cast<int>(b) + static_cast<int>(k) % span;
            int idx = p.cell(p.control.row0 + detail::dilate(lr), p.control.col0 + detail::dilate(lc));
            p.grid[idx] = CellRole::Control;
            p.placement[col[k]] = idx;
        }
    }
    for (int q = 0; q < table.n_system; q++) {
        auto [lc, lr] = sg.pos[q];
        int idx = p.cell(p.system.row0 + detail::dilate(lr), p.system.col0 + detail::dilate(lc));
        p.grid[idx] = CellRole::System;
        p.placement[q] = idx;
    }
    return p;
}

// Invariant checks; returns an empty string when the plan is legal.
inline std::string check_floor_plan(const FloorPlan& p, const HardwareSpec& hw)
{
    auto corridor = [&](int r, int c) {
        return r >= 0 && c >= 0 && r < p.rows && c < p.cols && p.passable(p.cell(r, c));
    };
    std::vector<int> seen(p.grid.size(), -1);
    for (std::size_t q = 0; q < p.placement.size(); q++) {
        int idx = p.placement[q];
        if (idx < 0) return "qubit " + std::to_string(q) + " not placed";
        if (p.passable(idx)) return "qubit " + std::to_string(q) + " placed on a corridor cell";
        if (seen[idx] >= 0) return "qubits share a cell";
        seen[idx] = static_cast<int>(q);
        int r = idx / p.cols, c = idx % p.cols;
        bool vert = corridor(r - 1, c) || corridor(r + 1, c);
        bool horiz = corridor(r, c - 1) || corridor(r, c + 1);
        if (!vert || !horiz) return "qubit " + std::to_string(q) + " lacks corridor access";
    }
    long factory_cells = std::count(p.grid.begin(), p.grid.end(), CellRole::Factory);
    if (factory_cells < static_cast<long>(hw.n_factories) * hw.factory_area) return "factory region too small";
    return {};
}

inline void write_ascii(std::ostream& os, const FloorPlan& p)
{
    for (int r = 0; r < p.rows; r++) {
        for (int c = 0; c < p.cols; c++) os << role_char(p.grid[p.cell(r, c)]);
        os << '\n';
    }
}

}  // namespace ftx::sim

#endif  // FTX_SIM_FLOOR_PLAN_HPP
