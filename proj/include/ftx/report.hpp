#ifndef FTX_REPORT_HPP
#define FTX_REPORT_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ftx/algorithms.hpp"
#include "ftx/config.hpp"
#include "ftx/crossover.hpp"
#include "ftx/sim/simulator.hpp"
#include "ftx/surface_code.hpp"

namespace ftx {

enum class Format { Json, Csv, Table };

inline const char* extension(Format f)
{
    switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Table: return "txt";
    }
    return "?";
}

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
    Json summary = Json::object();
};

struct CommandResult {
    std::vector<Table> tables;
    std::vector<std::pair<std::string, std::string>> raw;  // file name, contents
    int status = 0;                                        // 0 ok, 2 infeasible hardware
};

namespace detail {

inline std::string cell_text(const Json& v, bool display)
{
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float() && display) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v.get<double>());
        return buf;
    }
    return v.dump();
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void comment_header(std::ostream& os, const Table& t, const Json& header)
{
    os << "# " << header.value("tool", "ftx") << ' ' << header.value("version", "") << ' '
       << header.value("command", "") << ' ' << t.name << '\n';
    os << "# config " << header.at("config").dump() << '\n';
    for (auto it = t.summary.begin(); it != t.summary.end(); ++it) os << "# " << it.key() << ' ' << it.value().dump() << '\n';
}

}  // namespace detail

inline std::string render(const Table& t, Format f, const Json& header)
{
    std::ostringstream os;
    if (f == Format::Json) {
        Json rows = Json::array();
        for (const auto& r : t.rows) {
            Json o = Json::object();
            for (std::size_t i = 0; i < t.columns.size(); i++) o[t.columns[i]] = r[i];
            rows.push_back(std::move(o));
        }
        Json doc = header;
        doc["table"] = t.name;
        doc["summary"] = t.summary;
        doc["rows"] = std::move(rows);
        os << doc.dump(2) << '\n';
        return os.str();
    }
    detail::comment_header(os, t, header);
    if (f == Format::Csv) {
        for (std::size_t i = 0; i < t.columns.size(); i++) os << (i ? "," : "") << detail::csv_escape(t.columns[i]);
        os << '\n';
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); i++) os << (i ? "," : "") << detail::csv_escape(detail::cell_text(r[i], false));
            os << '\n';
        }
        return os.str();
    }
    std::vector<std::vector<std::string>> cells;
    cells.push_back(t.columns);
    for (const auto& r : t.rows) {
        std::vector<std::string> line;
        for (const auto& v : r) line.push_back(detail::cell_text(v, true));
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(t.columns.size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); i++) width[i] = std::max(width[i], line[i].size());
    for (const auto& line : cells) {
        std::string s;
        for (std::size_t i = 0; i < line.size(); i++) {
            if (i) s += "  ";
            s += line[i] + std::string(width[i] - line[i].size(), ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        os << s << '\n';
    }
    return os.str();
}

inline Json output_header(const RunConfig& c, const std::string& command)
{
    return Json{{"tool", "ftx"}, {"version", tool_version}, {"command", command}, {"config", to_json(c)}};
}

inline std::string lattice_label(const ModelConfig& m)
{
    std::string s;
    for (std::size_t i = 0; i < m.size.size(); i++) s += (i ? "x" : "") + std::to_string(m.size[i]);
    return s;
}

namespace detail {

template <class F>
void parallel_for(std::size_t n, int workers, F&& f)
{
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) f(i);
    };
    workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; w++) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

inline void require_models(const RunConfig& c)
{
    if (c.models.empty()) throw ConfigError("config defines no model");
}

inline std::string resolve(const RunConfig& c, const std::string& p)
{
    if (p.empty() || p.front() == '/' || c.base_dir.empty()) return p;
    return c.base_dir + "/" + p;
}

struct DetailedPlan {
    bool feasible = false;
    std::int64_t r = 0;
    std::int64_t n_log = 0;
    int d = 0;
    double n_ph = 0.0;
    double runtime_s = 0.0;
    std::string note;
};

inline DetailedPlan detailed_plan(const TermTable& t, double epsilon, std::int64_t beats, const HardwareSpec& hw,
                                  const CostOptions& co, InvolvedConvention conv)
{
    DetailedPlan p;
    if (t.count == 0 || beats == 0) {
        p.feasible = true;
        p.note = "empty Hamiltonian";
        return p;
    }
    CostReport rep = estimate(t, AlgorithmKind::QubitizationSequential, epsilon, co);
    p.r = rep.r;
    int log_l = ceil_log2(static_cast<std::int64_t>(t.count));
    p.n_log = select_logical_qubits(t.n_system, log_l, hw.threads, rep.budget.m, conv);
    try {
        CodePlan plan = solve_code_distance(p.n_log, beats, rep.r, hw);
        p.d = plan.d;
        p.n_ph = physical_qubits_detailed(t.n_system, log_l, hw, plan.d);
        p.runtime_s = runtime_estimate(plan.d, beats, rep.r, hw);
        p.feasible = true;
    } catch (const InfeasibleError& e) {
        p.note = e.what();
    }
    return p;
}

inline void check_threads(const TermTable& t, int b, const std::string& label)
{
    if (b < 1 || (t.count > 0 && static_cast<std::size_t>(b) > t.count))
        throw ConfigError(label + ": thread count " + std::to_string(b) + " must lie in [1, " +
                          std::to_string(t.count) + "]");
}

}  // namespace detail

inline CommandResult run_estimate(const RunConfig& c)
{
    detail::require_models(c);
    CommandResult out;
    Table matrix{"estimate_tcount", {"algorithm"}, {}, Json::object()};
    std::vector<std::vector<Json>> mrows(c.estimate.algorithms.size());
    for (std::size_t i = 0; i < mrows.size(); i++) mrows[i].push_back(to_string(c.estimate.algorithms[i]));
    for (const auto& m : c.models) {
        TermTable t = enumerate_terms(m.spec());
        Table tab{"estimate_" + m.label(),
                  {"algorithm", "epsilon", "lambda", "terms", "n_system", "r", "t_count_total", "t_count_per_select",
                   "t_depth_per_select", "n_rotations", "taylor_order", "n_logical", "feasible", "d", "n_ph",
                   "runtime_s", "note"},
                  {},
                  Json{{"model", m.kind}, {"lattice", lattice_label(m)}}};
        matrix.columns.push_back(m.label());
        for (std::size_t ai = 0; ai < c.estimate.algorithms.size(); ai++) {
            AlgorithmKind a = c.estimate.algorithms[ai];
            std::vector<Json> row{to_string(a), c.estimate.epsilon, t.lambda, t.count, t.n_system};
            if (t.count == 0) {
                for (int k = 0; k < 7; k++) row.push_back(0);
                row.insert(row.end(), {true, 0, 0.0, 0.0, "empty Hamiltonian"});
                mrows[ai].push_back(0);
                tab.rows.push_back(std::move(row));
                continue;
            }
            CostReport rep = estimate(t, a, c.estimate.epsilon, c.estimate.cost);
            SweepInputs in;
            in.table = t;
            in.algorithm = a;
            in.hw = c.hw;
            in.cost = c.estimate.cost;
            SweepCell cell = sweep_cell(in, c.estimate.epsilon, c.hw.p_phys);
            row.insert(row.end(), {rep.r, rep.t_count_total, rep.t_count_per_select, rep.t_depth_per_select,
                                   rep.n_rotations, rep.taylor_order, rep.n_logical, cell.feasible, cell.d, cell.n_ph,
                                   cell.runtime_s, cell.note});
            if (!cell.feasible) out.status = 2;
            mrows[ai].push_back(rep.t_count_total);
            tab.rows.push_back(std::move(row));
        }
        out.tables.push_back(std::move(tab));
    }
    matrix.rows = std::move(mrows);
    out.tables.push_back(std::move(matrix));
    return out;
}

inline CommandResult run_simulate(const RunConfig& c, int workers = 1)
{
    detail::require_models(c);
    struct Cell {
        std::size_t model;
        int threads, factories;
    };
    std::vector<TermTable> tables;
    std::vector<Cell> cells;
    for (std::size_t mi = 0; mi < c.models.size(); mi++) {
        tables.push_back(enumerate_terms(c.models[mi].spec()));
        for (int b : c.simulate.threads) {
            detail::check_threads(tables.back(), b, c.models[mi].label());
            for (int f : c.simulate.factories) cells.push_back({mi, b, f});
        }
    }
    struct Outcome {
        sim::SelectRun run;
        detail::DetailedPlan plan;
    };
    std::vector<Outcome> res(cells.size());
    detail::parallel_for(cells.size(), workers, [&](std::size_t i) {
        const Cell& cl = cells[i];
        const TermTable& t = tables[cl.model];
        HardwareSpec hw = c.hw;
        hw.n_factories = cl.factories;
        hw.threads = cl.threads;
        sim::SimOptions o = c.simulate.opts;
        o.trace = c.simulate.trace;
        if (t.count > 0) res[i].run = sim::simulate_select(t, hw, o, c.simulate.plan);
        if (hw.p_phys >= hw.p_th) {
            res[i].plan.note = "physical error rate above threshold";
            return;
        }
        res[i].plan = detail::detailed_plan(t, c.estimate.epsilon, res[i].run.result.total_beats, hw, c.estimate.cost,
                                            c.sweep.involved);
    });

    CommandResult out;
    Table lng{"simulate",
              {"model", "lattice", "threads", "n_factories", "beats", "magic", "supply_bound", "critical_path",
               "stall_routing", "stall_magic", "stall_reaction", "instructions", "r", "n_log_involved", "feasible", "d",
               "n_ph", "runtime_s", "note"},
              {},
              Json::object()};
    Table wide{"simulate_beats", {"model", "lattice", "threads"}, {}, Json::object()};
    for (int f : c.simulate.factories) wide.columns.push_back("beats_nf" + std::to_string(f));
    for (std::size_t i = 0; i < cells.size(); i++) {
        const auto& cl = cells[i];
        const auto& m = c.models[cl.model];
        const auto& r = res[i].run;
        const auto& p = res[i].plan;
        lng.rows.push_back({m.kind, lattice_label(m), cl.threads, cl.factories, r.result.total_beats, r.magic_expected,
                            r.supply_bound, r.critical_path, r.result.stall_beats_routing, r.result.stall_beats_magic,
                            r.result.stall_beats_reaction, r.result.instructions, p.r, p.n_log, p.feasible, p.d, p.n_ph,
                            p.runtime_s, p.note});
        if (!p.feasible) out.status = 2;
        if (cl.factories == c.simulate.factories.front()) wide.rows.push_back({m.kind, lattice_label(m), cl.threads});
        wide.rows.back().push_back(r.result.total_beats);
        if (c.simulate.trace) {
            std::ostringstream os;
            sim::write_trace_csv(os, r.result);
            out.raw.emplace_back("trace_" + m.label() + "_b" + std::to_string(cl.threads) + "_nf" +
                                     std::to_string(cl.factories) + ".csv",
                                 os.str());
        }
    }
    out.tables.push_back(std::move(lng));
    out.tables.push_back(std::move(wide));
    return out;
}

inline CommandResult run_sweep(const RunConfig& c, int workers = 1)
{
    detail::require_models(c);
    CommandResult out;
    bool any_feasible = false;
    for (const auto& m : c.models) {
        SweepInputs in;
        in.table = enumerate_terms(m.spec());
        in.algorithm = c.sweep.algorithm;
        in.epsilons = c.sweep.epsilons;
        in.ps = c.sweep.p_phys;
        in.hw = c.hw;
        in.cost = c.estimate.cost;
        in.involved = c.sweep.involved;
        Table tab{"sweep_" + m.label(),
                  {"epsilon", "p_phys", "feasible", "d", "n_log", "n_ph", "runtime_s", "r", "note"},
                  {},
                  Json{{"model", m.kind}, {"lattice", lattice_label(m)}, {"algorithm", to_string(c.sweep.algorithm)}}};
        if (in.table.count == 0) {
            for (double e : in.epsilons)
                for (double p : in.ps) tab.rows.push_back({e, p, true, 0, 0, 0.0, 0.0, 0, "empty Hamiltonian"});
            tab.summary["beats_per_select"] = 0;
            any_feasible = true;
            out.tables.push_back(std::move(tab));
            continue;
        }
        if (is_qubitization(c.sweep.algorithm)) {
            if (c.sweep.beats > 0) {
                in.beats_per_select = c.sweep.beats;
            } else if (c.sweep.simulate_beats) {
                detail::check_threads(in.table, c.hw.threads, m.label());
                sim::SimOptions o = c.simulate.opts;
                o.trace = false;
                in.beats_per_select = sim::simulate_select(in.table, c.hw, o, c.simulate.plan).result.total_beats;
            }
        }
        tab.summary["beats_per_select"] = in.beats_per_select;
        for (const auto& cell : sweep_grid(in, workers)) {
            any_feasible = any_feasible || cell.feasible;
            tab.rows.push_back({cell.epsilon, cell.p, cell.feasible, cell.d, cell.n_log, cell.n_ph, cell.runtime_s,
                                cell.r, cell.note});
        }
        out.tables.push_back(std::move(tab));
    }
    if (!any_feasible) out.status = 2;
    return out;
}

namespace detail {

inline std::vector<std::vector<std::string>> read_csv_rows(const std::string& path, std::vector<std::string>& header)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open data file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            header = cells;
            first = false;
        } else {
            rows.push_back(std::move(cells));
        }
    }
    return rows;
}

inline std::size_t column(const std::vector<std::string>& header, const std::string& name, const std::string& path)
{
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError(path + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

inline double number(const std::string& s, const std::string& path)
{
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(path + ": bad number '" + s + "'");
    }
}

}  // namespace detail

inline CommandResult run_crossover(const RunConfig& c, int workers = 1)
{
    const auto& x = c.crossover;
    bool sites = x.size_axis == "sites";
    std::vector<double> sizes, times;
    if (!x.classical_file.empty()) {
        std::string path = detail::resolve(c, x.classical_file);
        std::vector<std::string> h;
        auto rows = detail::read_csv_rows(path, h);
        auto im = detail::column(h, "model", path), ic = detail::column(h, "coupling", path),
             ix = detail::column(h, "lx", path), iy = detail::column(h, "ly", path),
             is = detail::column(h, "seconds", path);
        for (const auto& r : rows) {
            if (r.size() < h.size()) throw ConfigError(path + ": short row");
            if (r[im] != x.classical_model || std::abs(detail::number(r[ic], path) - x.coupling) > 1e-12) continue;
            double lx = detail::number(r[ix], path), ly = detail::number(r[iy], path);
            if (!sites && lx != ly) continue;
            sizes.push_back(sites ? lx * ly : lx);
            times.push_back(detail::number(r[is], path));
        }
    }

    std::vector<std::pair<double, double>> quantum = x.quantum;
    if (quantum.empty() && !x.quantum_file.empty()) {
        std::string path = detail::resolve(c, x.quantum_file);
        std::vector<std::string> h;
        auto rows = detail::read_csv_rows(path, h);
        auto im = detail::column(h, "model", path), is = detail::column(h, "size", path),
             inf = detail::column(h, "n_factories", path), ib = detail::column(h, "threads", path),
             it = detail::column(h, "runtime_s", path);
        for (const auto& r : rows) {
            if (r.size() < h.size()) throw ConfigError(path + ": short row");
            if (r[im] != x.quantum_model || detail::number(r[inf], path) != x.quantum_factories ||
                detail::number(r[ib], path) != x.quantum_threads)
                continue;
            double s = detail::number(r[is], path);
            quantum.emplace_back(sites && x.quantum_model != "spin1_chain" ? s * s : s, detail::number(r[it], path));
        }
    }
    if (quantum.empty() && x.quantum_file.empty() && !c.models.empty()) {
        RunConfig q = c;
        q.simulate.factories = {x.quantum_factories};
        q.simulate.threads = {x.quantum_threads};
        q.simulate.trace = false;
        CommandResult sim = run_simulate(q, workers);
        const Table& t = sim.tables.front();
        std::size_t ifeas = 14, irt = 17;
        for (std::size_t i = 0; i < c.models.size(); i++) {
            const auto& m = c.models[i];
            if (!t.rows[i][ifeas].get<bool>()) continue;
            double s = m.size[0];
            if (sites)
                for (std::size_t k = 1; k < m.size.size(); k++) s *= m.size[k];
            quantum.emplace_back(s, t.rows[i][irt].get<double>());
        }
    }

    CommandResult out;
    Table curve{"crossover", {"size", "classical_s", "classical_fast_s", "quantum_s"}, {}, Json::object()};
    Table data{"crossover_classical", {"size", "seconds", "fitted_s"}, {}, Json::object()};
    curve.summary["size_axis"] = x.size_axis;
    if (sizes.size() < 3) {
        curve.summary["fit"] = nullptr;
        curve.summary["crosspoint"] = "none in range";
        curve.summary["crosspoint_fast"] = "none in range";
        std::sort(quantum.begin(), quantum.end());
        for (const auto& [s, q] : quantum) curve.rows.push_back({s, nullptr, nullptr, q});
        for (std::size_t i = 0; i < sizes.size(); i++) data.rows.push_back({sizes[i], times[i], nullptr});
    } else {
        FitResult fit;
        try {
            fit = fit_size_scaling(sizes, times, x.form);
        } catch (const FitError& e) {
            throw ConfigError(std::string("classical fit: ") + e.what());
        }
        curve.summary["fit"] = Json{{"kind", to_string(fit.kind)}, {"a", fit.a}, {"b", fit.b}, {"residual", fit.residual},
                                    {"n", fit.n}};
        auto slow = find_crosspoint(fit, quantum, sizes, x.classical_scale);
        auto fast = find_crosspoint(fit, quantum, sizes, x.classical_scale * classical_speedup_bound);
        curve.summary["crosspoint"] = slow.crosspoint ? Json(*slow.crosspoint) : Json("none in range");
        curve.summary["crosspoint_fast"] = fast.crosspoint ? Json(*fast.crosspoint) : Json("none in range");
        for (std::size_t i = 0; i < slow.samples.size(); i++) {
            const auto& s = slow.samples[i];
            curve.rows.push_back({s.size, s.classical_s, fast.samples[i].classical_s,
                                  s.quantum_s ? Json(*s.quantum_s) : Json(nullptr)});
        }
        std::vector<std::size_t> order(sizes.size());
        for (std::size_t i = 0; i < order.size(); i++) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sizes[a] < sizes[b]; });
        for (auto i : order) data.rows.push_back({sizes[i], times[i], fit(sizes[i])});
    }
    out.tables.push_back(std::move(curve));
    out.tables.push_back(std::move(data));
    return out;
}

}  // namespace ftx

#endif  // FTX_REPORT_HPP
