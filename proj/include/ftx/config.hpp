#ifndef FTX_CONFIG_HPP
#define FTX_CONFIG_HPP

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>
#include <toml.hpp>

#include "ftx/algorithms.hpp"
#include "ftx/crossover.hpp"
#include "ftx/lattice.hpp"
#include "ftx/sim/simulator.hpp"
#include "ftx/surface_code.hpp"

namespace ftx {

inline constexpr const char* tool_version = "0.1.0";

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

struct ModelConfig {
    std::string kind = "heisenberg";  // heisenberg | fermi_hubbard | spin1_chain
    std::vector<int> size{4, 4};
    std::string boundary = "cylinder";  // cylinder | periodic | open
    double j1 = 1.0, j2 = 0.5, spin = 0.5;
    double t = 1.0, u = 4.0;
    double j = 1.0;

    std::string label() const
    {
        std::string s = kind + "_";
        for (std::size_t i = 0; i < size.size(); i++) s += (i ? "x" : "") + std::to_string(size[i]);
        return s;
    }

    LatticeSpec spec() const
    {
        std::vector<Boundary> b;
        for (std::size_t i = 0; i < size.size(); i++) {
            bool periodic = boundary == "periodic" || (boundary == "cylinder" && i == 0);
            b.push_back(periodic ? Boundary::Periodic : Boundary::Open);
        }
        if (kind == "heisenberg") return {size, b, HeisenbergJ1J2{j1, j2, spin}};
        if (kind == "fermi_hubbard") return {size, b, FermiHubbard{t, u}};
        if (kind == "spin1_chain") return {size, b, HeisenbergChain{spin, j}};
        throw ConfigError("unknown model kind: " + kind);
    }
};

struct EstimateConfig {
    double epsilon = 0.01;
    std::vector<AlgorithmKind> algorithms{std::begin(all_algorithms), std::end(all_algorithms)};
    CostOptions cost;
};

struct SimulateConfig {
    std::vector<int> factories{1};
    std::vector<int> threads{1};
    bool trace = false;
    sim::SimOptions opts;
    sim::FloorPlanOptions plan;
};

struct SweepConfig {
    AlgorithmKind algorithm = AlgorithmKind::QubitizationSequential;
    std::vector<double> epsilons{0.01};
    std::vector<double> p_phys{1e-3};
    bool simulate_beats = true;  // qubitization only; otherwise rough plans
    std::int64_t beats = 0;      // fixed beats per SELECT when positive
    InvolvedConvention involved = InvolvedConvention::FloorPlan;
};

struct CrossoverConfig {
    std::string classical_file;
    std::string classical_model = "heisenberg";
    double coupling = 0.5;
    std::string size_axis = "linear";  // linear (square lattices only) | sites
    SizeScaling form = SizeScaling::Exponential;
    std::vector<std::pair<double, double>> quantum;  // (size, seconds)
    std::string quantum_file;
    std::string quantum_model = "heisenberg";
    int quantum_factories = 1;
    int quantum_threads = 1;
    double classical_scale = 1.0;
};

struct RunConfig {
    std::vector<ModelConfig> models;
    EstimateConfig estimate;
    HardwareSpec hw;
    SimulateConfig simulate;
    SweepConfig sweep;
    CrossoverConfig crossover;
    std::string base_dir;  // relative data paths resolve against this
};

namespace detail {

template <class T>
T get_or(const Json& j, const char* key, T fallback)
{
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

inline void check_keys(const Json& j, const char* section, std::initializer_list<const char*> allowed)
{
    if (!j.is_object()) throw ConfigError(std::string("section '") + section + "' must be a table");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigError(std::string("unknown key '") + it.key() + "' in '" + section + "'");
    }
}

template <class E>
E pick(const std::string& v, std::initializer_list<std::pair<const char*, E>> opts, const char* what)
{
    for (const auto& [name, e] : opts)
        if (v == name) return e;
    throw ConfigError(std::string("unknown ") + what + ": " + v);
}

template <class E>
std::string name_of(E e, std::initializer_list<std::pair<const char*, E>> opts)
{
    for (const auto& [name, x] : opts)
        if (x == e) return name;
    return "?";
}

inline const std::initializer_list<std::pair<const char*, RotationCharge>> rotation_names{
    {"single", RotationCharge::Single}, {"controlled", RotationCharge::Controlled}};
inline const std::initializer_list<std::pair<const char*, RepetitionAccounting>> accounting_names{
    {"hodges_lehmann", RepetitionAccounting::HodgesLehmann}, {"single_shot", RepetitionAccounting::SingleShot}};
inline const std::initializer_list<std::pair<const char*, ProductPrepareForm>> prepare_names{
    {"caption", ProductPrepareForm::Caption}, {"text", ProductPrepareForm::Text}};
inline const std::initializer_list<std::pair<const char*, OpCountUnit>> unit_names{
    {"cycles", OpCountUnit::Cycles}, {"beats", OpCountUnit::Beats}};
inline const std::initializer_list<std::pair<const char*, sim::Routing>> routing_names{
    {"bfs", sim::Routing::BreadthFirst}, {"dfs", sim::Routing::DepthFirst}};
inline const std::initializer_list<std::pair<const char*, sim::LeafForm>> leaf_names{
    {"two_body", sim::LeafForm::TwoBody}, {"multi_body", sim::LeafForm::MultiBody}};
inline const std::initializer_list<std::pair<const char*, sim::ThreadMerge>> merge_names{
    {"round_robin", sim::ThreadMerge::RoundRobin}, {"concatenate", sim::ThreadMerge::Concatenate}};
inline const std::initializer_list<std::pair<const char*, sim::ControlLayout>> layout_names{
    {"strip", sim::ControlLayout::Strip}, {"block", sim::ControlLayout::Block}};
inline const std::initializer_list<std::pair<const char*, InvolvedConvention>> involved_names{
    {"floor_plan", InvolvedConvention::FloorPlan}, {"minimal", InvolvedConvention::Minimal}};
inline const std::initializer_list<std::pair<const char*, SizeScaling>> form_names{
    {"exponential", SizeScaling::Exponential}, {"power_law", SizeScaling::PowerLaw}};

inline ModelConfig parse_model(const Json& j)
{
    check_keys(j, "model", {"kind", "size", "boundary", "j1", "j2", "spin", "t", "u", "j"});
    ModelConfig m;
    m.kind = get_or<std::string>(j, "kind", m.kind);
    if (m.kind == "spin1_chain") {
        m.size = {10};
        m.boundary = "periodic";
        m.spin = 1.0;
    }
    if (j.contains("size")) {
        const auto& s = j.at("size");
        if (s.is_number_integer()) {
            int n = s.get<int>();
            m.size = m.kind == "spin1_chain" ? std::vector<int>{n} : std::vector<int>{n, n};
        } else {
            m.size = get_or<std::vector<int>>(j, "size", m.size);
        }
    }
    m.boundary = get_or<std::string>(j, "boundary", m.boundary);
    m.j1 = get_or(j, "j1", m.j1);
    m.j2 = get_or(j, "j2", m.j2);
    m.spin = get_or(j, "spin", m.spin);
    m.t = get_or(j, "t", m.t);
    m.u = get_or(j, "u", m.u);
    m.j = get_or(j, "j", m.j);
    if (m.boundary != "cylinder" && m.boundary != "periodic" && m.boundary != "open")
        throw ConfigError("unknown boundary: " + m.boundary);
    for (int e : m.size)
        if (e < 1) throw ConfigError("model size entries must be >= 1");
    (void)m.spec();
    return m;
}

inline std::vector<int> int_list(const Json& j, const char* key, std::vector<int> fallback)
{
    if (!j.contains(key)) return fallback;
    if (j.at(key).is_number_integer()) return {j.at(key).get<int>()};
    return get_or<std::vector<int>>(j, key, fallback);
}

inline std::vector<double> real_list(const Json& j, const char* key, std::vector<double> fallback)
{
    if (!j.contains(key)) return fallback;
    if (j.at(key).is_number()) return {j.at(key).get<double>()};
    return get_or<std::vector<double>>(j, key, fallback);
}

}  // namespace detail

inline RunConfig parse_config(const Json& root)
{
    detail::check_keys(root, "root", {"model", "models", "estimate", "hardware", "simulate", "sweep", "crossover"});
    RunConfig c;
    if (root.contains("model")) {
        const auto& m = root.at("model");
        if (m.is_array())
            for (const auto& x : m) c.models.push_back(detail::parse_model(x));
        else
            c.models.push_back(detail::parse_model(m));
    }
    if (root.contains("models"))
        for (const auto& x : root.at("models")) c.models.push_back(detail::parse_model(x));

    if (root.contains("estimate")) {
        const auto& e = root.at("estimate");
        detail::check_keys(e, "estimate",
                           {"epsilon", "algorithms", "rotation_charge", "qdrift_accounting", "failure_probability",
                            "heisenberg_product_prepare", "gamma", "xi"});
        c.estimate.epsilon = detail::get_or(e, "epsilon", c.estimate.epsilon);
        if (e.contains("algorithms")) {
            auto names = e.at("algorithms").is_string()
                             ? std::vector<std::string>{e.at("algorithms").get<std::string>()}
                             : detail::get_or<std::vector<std::string>>(e, "algorithms", {});
            c.estimate.algorithms.clear();
            for (const auto& n : names) {
                if (n == "all") {
                    c.estimate.algorithms.assign(std::begin(all_algorithms), std::end(all_algorithms));
                    break;
                }
                try {
                    c.estimate.algorithms.push_back(algorithm_from_string(n));
                } catch (const std::invalid_argument& ex) {
                    throw ConfigError(ex.what());
                }
            }
            if (c.estimate.algorithms.empty()) throw ConfigError("estimate.algorithms is empty");
        }
        auto& co = c.estimate.cost;
        co.rotation_charge = detail::pick(detail::get_or<std::string>(e, "rotation_charge", "single"),
                                          detail::rotation_names, "rotation charge");
        co.qdrift_accounting = detail::pick(detail::get_or<std::string>(e, "qdrift_accounting", "hodges_lehmann"),
                                            detail::accounting_names, "qdrift accounting");
        co.failure_probability = detail::get_or(e, "failure_probability", co.failure_probability);
        co.heisenberg_product_prepare = detail::pick(
            detail::get_or<std::string>(e, "heisenberg_product_prepare", "caption"), detail::prepare_names,
            "prepare form");
        co.consts.gamma = detail::get_or(e, "gamma", co.consts.gamma);
        co.consts.xi = detail::get_or(e, "xi", co.consts.xi);
        if (!(c.estimate.epsilon > 0.0)) throw ConfigError("estimate.epsilon must be positive");
    }

    if (root.contains("hardware")) {
        const auto& h = root.at("hardware");
        detail::check_keys(h, "hardware",
                           {"p_phys", "p_th", "t_cycle", "reaction_time", "n_factories", "factory_area",
                            "distill_beats", "threads", "d_max", "op_unit"});
        auto& hw = c.hw;
        hw.p_phys = detail::get_or(h, "p_phys", hw.p_phys);
        hw.p_th = detail::get_or(h, "p_th", hw.p_th);
        hw.t_cycle = detail::get_or(h, "t_cycle", hw.t_cycle);
        hw.reaction_time = detail::get_or(h, "reaction_time", hw.reaction_time);
        hw.n_factories = detail::get_or(h, "n_factories", hw.n_factories);
        hw.factory_area = detail::get_or(h, "factory_area", hw.factory_area);
        hw.distill_beats = detail::get_or(h, "distill_beats", hw.distill_beats);
        hw.threads = detail::get_or(h, "threads", hw.threads);
        hw.d_max = detail::get_or(h, "d_max", hw.d_max);
        hw.op_unit = detail::pick(detail::get_or<std::string>(h, "op_unit", "cycles"), detail::unit_names, "op unit");
        if (hw.n_factories < 1) throw ConfigError("hardware.n_factories must be >= 1");
        if (!(hw.p_th > 0.0)) throw ConfigError("hardware.p_th must be positive");
        try {
            validate(hw);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("hardware: ") + ex.what());
        }
    }
    c.sweep.p_phys = {c.hw.p_phys};
    c.simulate.factories = {c.hw.n_factories};
    c.simulate.threads = {c.hw.threads};

    if (root.contains("simulate")) {
        const auto& s = root.at("simulate");
        detail::check_keys(s, "simulate",
                           {"factories", "threads", "trace", "routing", "leaf", "merge", "control_layout",
                            "reaction_beats", "reaction_from_hardware", "code_distance", "check_conflicts"});
        c.simulate.factories = detail::int_list(s, "factories", c.simulate.factories);
        c.simulate.threads = detail::int_list(s, "threads", c.simulate.threads);
        c.simulate.trace = detail::get_or(s, "trace", false);
        auto& o = c.simulate.opts;
        o.routing = detail::pick(detail::get_or<std::string>(s, "routing", "bfs"), detail::routing_names, "routing");
        o.synthesis.leaf = detail::pick(detail::get_or<std::string>(s, "leaf", "two_body"), detail::leaf_names, "leaf");
        o.synthesis.merge =
            detail::pick(detail::get_or<std::string>(s, "merge", "round_robin"), detail::merge_names, "merge");
        c.simulate.plan.control = detail::pick(detail::get_or<std::string>(s, "control_layout", "strip"),
                                               detail::layout_names, "control layout");
        o.reaction_beats = detail::get_or(s, "reaction_beats", o.reaction_beats);
        o.check_conflicts = detail::get_or(s, "check_conflicts", false);
        if (detail::get_or(s, "reaction_from_hardware", false)) {
            int d = detail::get_or(s, "code_distance", 0);
            if (d < 1) throw ConfigError("simulate.reaction_from_hardware needs simulate.code_distance");
            o.reaction_beats = sim::reaction_beats_for(c.hw, d);
        }
        if (o.reaction_beats < 0) throw ConfigError("simulate.reaction_beats must be >= 0");
        for (int f : c.simulate.factories)
            if (f < 1) throw ConfigError("simulate.factories entries must be >= 1");
        for (int b : c.simulate.threads)
            if (b < 1) throw ConfigError("simulate.threads entries must be >= 1");
        if (c.simulate.factories.empty() || c.simulate.threads.empty())
            throw ConfigError("simulate grids must be non-empty");
    }

    if (root.contains("sweep")) {
        const auto& s = root.at("sweep");
        detail::check_keys(s, "sweep", {"algorithm", "epsilons", "p_phys", "beats", "involved"});
        try {
            c.sweep.algorithm = algorithm_from_string(detail::get_or<std::string>(s, "algorithm", "qubitization_sequential"));
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(ex.what());
        }
        c.sweep.epsilons = detail::real_list(s, "epsilons", c.sweep.epsilons);
        c.sweep.p_phys = detail::real_list(s, "p_phys", c.sweep.p_phys);
        if (s.contains("beats")) {
            const auto& b = s.at("beats");
            if (b.is_string()) {
                auto v = b.get<std::string>();
                if (v == "simulate") c.sweep.simulate_beats = true;
                else if (v == "rough") c.sweep.simulate_beats = false;
                else throw ConfigError("sweep.beats must be 'simulate', 'rough' or a positive integer");
            } else {
                c.sweep.beats = detail::get_or<std::int64_t>(s, "beats", 0);
                c.sweep.simulate_beats = false;
                if (c.sweep.beats < 1) throw ConfigError("sweep.beats must be positive");
            }
        }
        c.sweep.involved = detail::pick(detail::get_or<std::string>(s, "involved", "floor_plan"),
                                        detail::involved_names, "involved convention");
        if (c.sweep.epsilons.empty() || c.sweep.p_phys.empty()) throw ConfigError("sweep grids must be non-empty");
        for (double e : c.sweep.epsilons)
            if (!(e > 0.0)) throw ConfigError("sweep.epsilons must be positive");
        for (double p : c.sweep.p_phys)
            if (!(p > 0.0)) throw ConfigError("sweep.p_phys must be positive");
    }

    if (root.contains("crossover")) {
        const auto& x = root.at("crossover");
        detail::check_keys(x, "crossover",
                           {"classical_file", "classical_model", "coupling", "size_axis", "form", "quantum",
                            "quantum_file", "quantum_model", "quantum_factories", "quantum_threads",
                            "classical_scale"});
        auto& cc = c.crossover;
        cc.classical_file = detail::get_or<std::string>(x, "classical_file", "");
        cc.classical_model = detail::get_or<std::string>(x, "classical_model", cc.classical_model);
        cc.coupling = detail::get_or(x, "coupling", cc.coupling);
        cc.size_axis = detail::get_or<std::string>(x, "size_axis", cc.size_axis);
        if (cc.size_axis != "linear" && cc.size_axis != "sites") throw ConfigError("unknown size axis: " + cc.size_axis);
        cc.quantum_file = detail::get_or<std::string>(x, "quantum_file", "");
        cc.quantum_model = detail::get_or<std::string>(x, "quantum_model", cc.classical_model);
        cc.quantum_factories = detail::get_or(x, "quantum_factories", cc.quantum_factories);
        cc.quantum_threads = detail::get_or(x, "quantum_threads", cc.quantum_threads);
        cc.form = detail::pick(detail::get_or<std::string>(x, "form", "exponential"), detail::form_names, "form");
        cc.classical_scale = detail::get_or(x, "classical_scale", cc.classical_scale);
        if (x.contains("quantum")) {
            for (const auto& row : x.at("quantum")) {
                if (!row.is_array() || row.size() != 2) throw ConfigError("crossover.quantum rows are [size, seconds]");
                cc.quantum.emplace_back(row[0].get<double>(), row[1].get<double>());
            }
        }
        if (!(cc.classical_scale > 0.0)) throw ConfigError("crossover.classical_scale must be positive");
    }
    return c;
}

inline Json to_json(const ModelConfig& m)
{
    Json j{{"kind", m.kind}, {"size", m.size}, {"boundary", m.boundary}};
    if (m.kind == "heisenberg") {
        j["j1"] = m.j1;
        j["j2"] = m.j2;
        j["spin"] = m.spin;
    } else if (m.kind == "fermi_hubbard") {
        j["t"] = m.t;
        j["u"] = m.u;
    } else {
        j["spin"] = m.spin;
        j["j"] = m.j;
    }
    return j;
}

inline Json to_json(const HardwareSpec& hw)
{
    return Json{{"p_phys", hw.p_phys},
                {"p_th", hw.p_th},
                {"t_cycle", hw.t_cycle},
                {"reaction_time", hw.reaction_time},
                {"n_factories", hw.n_factories},
                {"factory_area", hw.factory_area},
                {"distill_beats", hw.distill_beats},
                {"threads", hw.threads},
                {"d_max", hw.d_max},
                {"op_unit", detail::name_of(hw.op_unit, detail::unit_names)}};
}

// Fully resolved configuration, defaults included.
inline Json to_json(const RunConfig& c)
{
    Json models = Json::array();
    for (const auto& m : c.models) models.push_back(to_json(m));
    Json algs = Json::array();
    for (auto a : c.estimate.algorithms) algs.push_back(to_string(a));
    const auto& co = c.estimate.cost;
    const auto& so = c.simulate.opts;
    Json quantum = Json::array();
    for (const auto& [s, t] : c.crossover.quantum) quantum.push_back({s, t});
    return Json{
        {"models", models},
        {"estimate",
         {{"epsilon", c.estimate.epsilon},
          {"algorithms", algs},
          {"rotation_charge", detail::name_of(co.rotation_charge, detail::rotation_names)},
          {"qdrift_accounting", detail::name_of(co.qdrift_accounting, detail::accounting_names)},
          {"failure_probability", co.failure_probability},
          {"heisenberg_product_prepare", detail::name_of(co.heisenberg_product_prepare, detail::prepare_names)},
          {"gamma", co.consts.gamma},
          {"xi", co.consts.xi}}},
        {"hardware", to_json(c.hw)},
        {"simulate",
         {{"factories", c.simulate.factories},
          {"threads", c.simulate.threads},
          {"trace", c.simulate.trace},
          {"routing", detail::name_of(so.routing, detail::routing_names)},
          {"leaf", detail::name_of(so.synthesis.leaf, detail::leaf_names)},
          {"merge", detail::name_of(so.synthesis.merge, detail::merge_names)},
          {"control_layout", detail::name_of(c.simulate.plan.control, detail::layout_names)},
          {"reaction_beats", so.reaction_beats}}},
        {"sweep",
         {{"algorithm", to_string(c.sweep.algorithm)},
          {"epsilons", c.sweep.epsilons},
          {"p_phys", c.sweep.p_phys},
          {"beats", c.sweep.simulate_beats ? Json("simulate") : (c.sweep.beats > 0 ? Json(c.sweep.beats) : Json("rough"))},
          {"involved", detail::name_of(c.sweep.involved, detail::involved_names)}}},
        {"crossover",
         {{"classical_file", c.crossover.classical_file},
          {"classical_model", c.crossover.classical_model},
          {"coupling", c.crossover.coupling},
          {"size_axis", c.crossover.size_axis},
          {"form", detail::name_of(c.crossover.form, detail::form_names)},
          {"quantum", quantum},
          {"quantum_file", c.crossover.quantum_file},
          {"quantum_model", c.crossover.quantum_model},
          {"quantum_factories", c.crossover.quantum_factories},
          {"quantum_threads", c.crossover.quantum_threads},
          {"classical_scale", c.crossover.classical_scale}}}};
}

inline Json toml_to_json(const std::string& text, const std::string& origin)
{
    try {
        toml::table tbl = toml::parse(text, origin);
        std::ostringstream os;
        os << toml::json_formatter{tbl};
        return Json::parse(os.str());
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << origin << ":" << e.source().begin.line << ": " << e.description();
        throw ConfigError(os.str());
    }
}

// TOML by default; files ending in .json are read as JSON.
inline RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    Json root;
    bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    if (is_json) {
        try {
            root = Json::parse(text);
        } catch (const std::exception& e) {
            throw ConfigError(path + ": " + e.what());
        }
    } else {
        root = toml_to_json(text, path);
    }
    RunConfig c = parse_config(root);
    auto slash = path.find_last_of('/');
    c.base_dir = slash == std::string::npos ? "." : path.substr(0, slash);
    return c;
}

}  // namespace ftx

#endif  // FTX_CONFIG_HPP
