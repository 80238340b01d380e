#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ftx/ftx.hpp"

using namespace ftx;

namespace {

using Row = std::map<std::string, std::string>;

std::vector<Row> read_csv(const std::string& name)
{
    std::ifstream in(std::string(FTX_DATA_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing data file " + name);
    std::vector<Row> out;
    std::vector<std::string> header;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        if (header.empty()) {
            header = cells;
            continue;
        }
        Row r;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); i++) r[header[i]] = cells[i];
        out.push_back(std::move(r));
    }
    return out;
}

double num(const Row& r, const char* k) { return std::stod(r.at(k)); }
int inum(const Row& r, const char* k) { return std::stoi(r.at(k)); }

TermTable model_table(const std::string& model, int size)
{
    if (model == "heisenberg") return enumerate_terms(square(size, HeisenbergJ1J2{1.0, 0.5, 0.5}));
    if (model == "fermi_hubbard") return enumerate_terms(square(size, FermiHubbard{1.0, 4.0}));
    return enumerate_terms(chain(size, HeisenbergChain{1.0, 1.0}));
}

HardwareSpec hw_for(int nf, int b)
{
    HardwareSpec hw;
    hw.n_factories = nf;
    hw.threads = b;
    return hw;
}

std::string key(const std::string& model, int size, int b, int nf)
{
    return model + " " + std::to_string(size) + " b=" + std::to_string(b) + " nF=" + std::to_string(nf);
}

bool sig3(double a, double b)
{
    char x[32], y[32];
    std::snprintf(x, sizeof x, "%.2e", a);
    std::snprintf(y, sizeof y, "%.2e", b);
    return std::string(x) == y;
}

struct Criterion {
    int id;
    std::string title;
    std::set<std::string> known;  // items expected to fail, documented deviations
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& item)
    {
        if (!ok) failures.push_back(item);
    }
};

int unexpected = 0;

void report(Criterion& c, double seconds)
{
    bool all_known = true;
    for (const auto& f : c.failures) all_known = all_known && c.known.count(f) > 0;
    const char* verdict = c.failures.empty() ? "PASS" : "FAIL";
    std::printf("[%s] %d. %s (%.1f s)", verdict, c.id, c.title.c_str(), seconds);
    if (!c.failures.empty()) std::printf(all_known ? " known deviation" : " UNEXPECTED");
    std::printf("\n");
    for (const auto& f : c.failures) std::printf("       - %s%s\n", f.c_str(), c.known.count(f) ? " (known)" : "");
    for (const auto& n : c.notes) std::printf("       . %s\n", n.c_str());
    if (!all_known) unexpected++;
}

template <class F>
void run(Criterion c, F&& body)
{
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    report(c, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

struct SimCell {
    std::string model;
    int size, b, nf;
    double reference = 0.0;
    sim::SelectRun run;
};

std::vector<SimCell> simulate_matrix()
{
    std::vector<SimCell> cells;
    for (const auto& r : read_csv("select_beats.csv"))
        for (int nf : {1, 4, 16})
            cells.push_back({r.at("model"), inum(r, "size"), inum(r, "threads"), nf,
                             num(r, ("beats_nf" + std::to_string(nf)).c_str()), {}});
    std::map<std::pair<std::string, int>, TermTable> tables;
    for (const auto& c : cells)
        if (!tables.count({c.model, c.size})) tables[{c.model, c.size}] = model_table(c.model, c.size);
    // largest cells first for load balance
    std::vector<std::size_t> order(cells.size());
    for (std::size_t i = 0; i < order.size(); i++) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return cells[a].reference > cells[b].reference; });
    int workers = std::max(1u, std::thread::hardware_concurrency());
    detail::parallel_for(order.size(), workers, [&](std::size_t k) {
        auto& c = cells[order[k]];
        c.run = sim::simulate_select(tables.at({c.model, c.size}), hw_for(c.nf, c.b));
    });
    return cells;
}

}  // namespace

int main()
{
    std::printf("ftx acceptance, version %s\n", tool_version);
    const auto plans = read_csv("detailed_plans.csv");
    const auto beats = read_csv("select_beats.csv");
    auto table_beats = [&](const std::string& m, int size, int b, int nf) {
        for (const auto& r : beats)
            if (r.at("model") == m && inum(r, "size") == size && inum(r, "threads") == b)
                return std::stoll(r.at("beats_nf" + std::to_string(nf)));
        throw std::runtime_error("no beats row for " + key(m, size, b, nf));
    };

    run({1, "repetition counts match to 3 significant figures", {}, {}, {}}, [&](Criterion& c) {
        const std::pair<int, double> heis[] = {{4, 5.24e3}, {6, 1.26e4}, {10, 3.67e4}};
        const std::pair<int, double> fh[] = {{4, 1.26e4}, {6, 2.93e4}, {10, 8.38e4}};
        for (auto [s, r] : heis) {
            auto b = budget_from_target(0.01, model_table("heisenberg", s).lambda, AlgorithmKind::QubitizationSequential);
            c.check(sig3(static_cast<double>(b.r), r), "heisenberg " + std::to_string(s) + " r=" + std::to_string(b.r));
        }
        for (auto [s, r] : fh) {
            auto b = budget_from_target(0.01, model_table("fermi_hubbard", s).lambda, AlgorithmKind::QubitizationSequential);
            c.check(sig3(static_cast<double>(b.r), r), "fermi_hubbard " + std::to_string(s) + " r=" + std::to_string(b.r));
        }
    });

    run({2, "code distances from published beats",
         {"spin1_chain 10 b=16 nF=16", "spin1_chain 20 b=16 nF=16", "spin1_chain 40 b=16 nF=16",
          "spin1_chain 80 b=1 nF=1", "spin1_chain 80 b=16 nF=16", "spin1_chain 160 b=1 nF=1",
          "spin1_chain 160 b=16 nF=16"},
         {},
         {}},
        [&](Criterion& c) {
        int n = 0;
        for (const auto& p : plans) {
            std::string m = p.at("model");
            int s = inum(p, "size"), b = inum(p, "threads"), nf = inum(p, "n_factories");
            auto t = model_table(m, s);
            auto r = static_cast<std::int64_t>(num(p, "r"));
            auto nl = select_logical_qubits(t.n_system, ceil_log2(static_cast<std::int64_t>(t.count)), b, readout_digits(r));
            int d = solve_code_distance(nl, table_beats(m, s, b, nf), r, hw_for(nf, b)).d;
            c.check(d == inum(p, "d"), key(m, s, b, nf));
            if (d != inum(p, "d")) c.notes.push_back(key(m, s, b, nf) + " d=" + std::to_string(d) + " vs " + p.at("d"));
            n++;
        }
        c.notes.push_back(std::to_string(n) + " rows");
    });

    run({3, "physical qubit counts", {}, {}, {}}, [&](Criterion& c) {
        for (const auto& p : plans) {
            std::string m = p.at("model");
            if (m == "spin1_chain") continue;
            int s = inum(p, "size"), b = inum(p, "threads"), nf = inum(p, "n_factories");
            auto t = model_table(m, s);
            double n = physical_qubits_detailed(t.n_system, ceil_log2(static_cast<std::int64_t>(t.count)), hw_for(nf, b),
                                                inum(p, "d"));
            double ratio = n / num(p, "n_ph");
            c.check(std::abs(ratio - 1.0) <= 0.05, key(m, s, b, nf) + " detailed ratio " + std::to_string(ratio));
        }
        auto tc = read_csv("tcount_reference.csv");
        int triples = 0;
        for (const auto& r : read_csv("rough_plans.csv")) {
            for (const auto& t : tc) {
                if (t.at("model") != r.at("model") || t.at("size") != r.at("size") || t.at("algorithm") != r.at("algorithm"))
                    continue;
                auto plan = solve_code_distance_rough(std::stoll(r.at("n_log")), num(t, "t_count"), HardwareSpec{});
                bool ok = plan.d == inum(r, "d") && std::abs(plan.n_ph / num(r, "n_ph") - 1.0) <= 0.10;
                c.check(ok, "rough " + r.at("model") + " " + r.at("size") + " " + r.at("algorithm"));
                triples++;
            }
        }
        c.check(triples >= 6, "fewer than 6 rough triples");
        c.notes.push_back(std::to_string(triples) + " rough triples");
    });

    std::vector<SimCell> cells;
    auto t_sim = std::chrono::steady_clock::now();
    cells = simulate_matrix();
    double sim_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_sim).count();
    auto sim_beats = [&](const std::string& m, int s, int b, int nf) -> const SimCell& {
        for (const auto& c : cells)
            if (c.model == m && c.size == s && c.b == b && c.nf == nf) return c;
        throw std::runtime_error("no simulated cell " + key(m, s, b, nf));
    };

    run({4, "runtimes from published inputs and end to end",
         {"table fermi_hubbard 10 b=1 nF=1", "end-to-end fermi_hubbard 6 b=16 nF=16",
          "end-to-end fermi_hubbard 8 b=16 nF=16", "end-to-end fermi_hubbard 10 b=16 nF=16"},
         {},
         {}},
        [&](Criterion& c) {
            double worst = 0.0;
            for (const auto& p : plans) {
                std::string m = p.at("model");
                int s = inum(p, "size"), b = inum(p, "threads"), nf = inum(p, "n_factories");
                auto r = static_cast<std::int64_t>(num(p, "r"));
                HardwareSpec hw = hw_for(nf, b);
                double t = runtime_estimate(inum(p, "d"), table_beats(m, s, b, nf), r, hw);
                c.check(std::abs(t / num(p, "runtime_s") - 1.0) <= 0.02, "table " + key(m, s, b, nf));

                auto tab = model_table(m, s);
                auto own = detail::detailed_plan(tab, 0.01, sim_beats(m, s, b, nf).run.result.total_beats, hw,
                                                 CostOptions{}, InvolvedConvention::FloorPlan);
                double ratio = own.runtime_s / num(p, "runtime_s");
                worst = std::max(worst, std::abs(ratio - 1.0));
                bool ok = own.feasible && std::abs(ratio - 1.0) <= 0.35;
                c.check(ok, "end-to-end " + key(m, s, b, nf));
                if (!ok) c.notes.push_back("end-to-end " + key(m, s, b, nf) + " ratio " + std::to_string(ratio));
            }
            char buf[64];
            std::snprintf(buf, sizeof buf, "worst end-to-end deviation %.1f%%", 100.0 * worst);
            c.notes.push_back(buf);
        });

    run({5, "scheduler reproduces the beat matrix",
         {"fermi_hubbard 6 b=16 nF=16", "fermi_hubbard 8 b=16 nF=16", "fermi_hubbard 10 b=16 nF=16"},
         {},
         {}},
        [&](Criterion& c) {
            int within = 0;
            for (const auto& cell : cells) {
                double beats = static_cast<double>(cell.run.result.total_beats);
                double ratio = beats / cell.reference;
                bool ok = std::abs(ratio - 1.0) <= 0.30;
                within += ok;
                char buf[32];
                std::snprintf(buf, sizeof buf, " ratio %.3f", ratio);
                if (!ok) c.failures.push_back(key(cell.model, cell.size, cell.b, cell.nf));
                if (!ok) c.notes.push_back(key(cell.model, cell.size, cell.b, cell.nf) + buf);
                if (cell.nf == 1) {
                    double supply = 15.0 * static_cast<double>(cell.run.magic_expected);
                    c.check(beats >= supply && beats <= 2.0 * supply,
                            "supply band " + key(cell.model, cell.size, cell.b, cell.nf));
                }
            }
            for (const auto& cell : cells) {
                if (cell.nf == 1) continue;
                int prev = cell.nf == 4 ? 1 : 4;
                c.check(cell.run.result.total_beats <= sim_beats(cell.model, cell.size, cell.b, prev).run.result.total_beats,
                        "monotone " + key(cell.model, cell.size, cell.b, cell.nf));
            }
            double r = static_cast<double>(sim_beats("heisenberg", 10, 16, 16).run.result.total_beats) /
                       static_cast<double>(sim_beats("heisenberg", 10, 1, 1).run.result.total_beats);
            c.check(r < 0.25, "parallel speedup ratio " + std::to_string(r));
            char buf[96];
            std::snprintf(buf, sizeof buf, "%d of %zu cells within 30%%; parallel ratio %.3f; simulation %.1f s", within,
                          cells.size(), r, sim_seconds);
            c.notes.push_back(buf);
        });

    run({6, "algorithm comparison",
         {"magnitude heisenberg 6 qdrift", "magnitude heisenberg 10 qdrift", "magnitude heisenberg 20 qdrift",
          "magnitude heisenberg 100 qdrift"},
         {},
         {}},
        [&](Criterion& c) {
            std::map<std::pair<std::string, int>, std::map<std::string, double>> ref;
            for (const auto& r : read_csv("tcount_reference.csv"))
                ref[{r.at("model"), inum(r, "size")}][r.at("algorithm")] = num(r, "t_count");
            for (const auto& [ms, algs] : ref) {
                auto t = model_table(ms.first, ms.second);
                auto reps = estimate_all(t, 0.01);
                std::int64_t q = std::min(reps[3].t_count_total, reps[4].t_count_total);
                std::string id = ms.first + " " + std::to_string(ms.second);
                for (int i = 0; i < 3; i++) c.check(q < reps[i].t_count_total, "ordering " + id + " " + to_string(reps[i].algorithm));
                for (const auto& rep : reps) {
                    auto it = algs.find(to_string(rep.algorithm));
                    if (it == algs.end()) continue;
                    double lg = std::log10(static_cast<double>(rep.t_count_total) / it->second);
                    c.check(std::abs(lg) < 1.0, "magnitude " + id + " " + to_string(rep.algorithm));
                    if (std::abs(lg) >= 1.0) {
                        char buf[64];
                        std::snprintf(buf, sizeof buf, " log10 ratio %.2f", lg);
                        c.notes.push_back(id + " " + to_string(rep.algorithm) + buf);
                    }
                }
                auto seq = select_cost(t, OracleFlavor::Sequential).t_count;
                auto prod = select_cost(t, OracleFlavor::Product).t_count;
                if (ms.first == "fermi_hubbard")
                    c.check(prod * 18 == seq * 10, "select ratio " + id);
                else
                    c.check(std::abs(static_cast<double>(prod) / seq - 0.5) <= 0.12, "select ratio " + id);
            }
        });

    run({7, "crossover points", {}, {}, {}}, [&](Criterion& c) {
        auto classical = read_csv("classical_runtimes.csv");
        auto point = [&](const std::string& m, double coupling, int nf, int b) {
            std::vector<double> s, t;
            for (const auto& r : classical)
                if (r.at("model") == m && std::abs(num(r, "coupling") - coupling) < 1e-12 && r.at("lx") == r.at("ly")) {
                    s.push_back(num(r, "lx"));
                    t.push_back(num(r, "seconds"));
                }
            std::vector<std::pair<double, double>> q;
            for (const auto& p : plans)
                if (p.at("model") == m && inum(p, "n_factories") == nf && inum(p, "threads") == b)
                    q.emplace_back(num(p, "size"), num(p, "runtime_s"));
            return find_crosspoint(fit_size_scaling(s, t, SizeScaling::Exponential), q).crosspoint;
        };
        auto h = point("heisenberg", 0.5, 16, 16);
        auto f = point("fermi_hubbard", 4.0, 1, 1);
        c.check(h && *h == 10.0, "heisenberg crosspoint " + (h ? std::to_string(*h) : std::string("none")));
        c.check(f && *f <= 6.0, "fermi_hubbard crosspoint " + (f ? std::to_string(*f) : std::string("none")));
        c.notes.push_back("heisenberg " + std::to_string(h.value_or(0)) + ", fermi_hubbard " + std::to_string(f.value_or(0)));
    });

    run({8, "property suites", {}, {}, {}}, [&](Criterion& c) {
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<std::int64_t> sz(2, 500);
        std::uniform_real_distribution<double> ex(1.0, 40.0);
        int bad = 0;
        for (int i = 0; i < 1000; i++) {
            std::int64_t m = sz(rng), n = sz(rng);
            double delta = std::pow(2.0, -ex(rng));
            int b = static_cast<int>(std::ceil(std::log2(1.0 / delta) - 1e-12));
            bad += tcount_adder(n) != 4 * n - 4;
            bad += tcount_controlled_adder(m, n) != 4 * (m - 1) + 8 * (n - 1);
            bad += tcount_mcx(m) != 4 * (m - 1);
            bad += tcount_cswap(m) != 4 * m;
            bad += tcount_rotation(delta) != static_cast<std::int64_t>(std::ceil(1.03 * b + 5.6 - 1e-9));
            bad += tcount_controlled_rotation(m, delta) !=
                   static_cast<std::int64_t>(std::ceil(8.0 * (m - 1) + 2.06 * b + 11.2 - 1e-9));
        }
        c.check(bad == 0, "gate-cost mismatches: " + std::to_string(bad));

        double worst = 0.0;
        std::uniform_real_distribution<double> pa(0.1, 10.0), pb(-2.0, 2.0);
        for (int i = 0; i < 100; i++) {
            double a = pa(rng), b = pb(rng);
            std::vector<std::pair<double, double>> pw, xp;
            for (double x : {1.0, 2.0, 4.0, 7.0}) {
                pw.emplace_back(x, a * std::pow(x, b));
                xp.emplace_back(x, a * std::exp(b * x));
            }
            auto f1 = fit_power_law(pw), f2 = fit_exponential(xp);
            worst = std::max({worst, std::abs(f1.a / a - 1), std::abs(f2.a / a - 1), std::abs(f1.b - b) / std::max(1.0, std::abs(b)),
                              std::abs(f2.b - b) / std::max(1.0, std::abs(b))});
        }
        c.check(worst <= 1e-9, "fit round trip error " + std::to_string(worst));

        auto t = model_table("fermi_hubbard", 4);
        sim::SimOptions o;
        o.trace = true;
        auto r1 = sim::simulate_select(t, hw_for(4, 4), o), r2 = sim::simulate_select(t, hw_for(4, 4), o);
        std::ostringstream s1, s2;
        sim::write_trace_csv(s1, r1.result);
        sim::write_trace_csv(s2, r2.result);
        c.check(s1.str() == s2.str() && r1.result.total_beats == r2.result.total_beats, "simulator determinism");

        SweepInputs in;
        in.table = model_table("heisenberg", 10);
        in.beats_per_select = sim_beats("heisenberg", 10, 1, 1).run.result.total_beats;
        for (int i = 0; i < 10; i++) {
            in.epsilons.push_back(0.1 * std::pow(10.0, -0.3 * i));
            in.ps.push_back(1e-5 * std::pow(10.0, 0.28 * i));
        }
        auto grid = sweep_grid(in, 4);
        bool mono = true;
        for (int e = 0; e < 10; e++)
            for (int p = 0; p < 10; p++) {
                const auto& x = grid[e * 10 + p];
                mono = mono && x.feasible;
                if (p + 1 < 10) mono = mono && x.d <= grid[e * 10 + p + 1].d;
                if (e + 1 < 10) mono = mono && x.d <= grid[(e + 1) * 10 + p].d;
            }
        c.check(mono, "heatmap monotonicity");
    });

    std::printf("%s\n", unexpected == 0 ? "acceptance: no unexpected failures" : "acceptance: UNEXPECTED FAILURES");
    return unexpected == 0 ? 0 : 1;
}
