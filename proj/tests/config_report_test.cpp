#include <gtest/gtest.h>

#include <fstream>

#include "ftx/report.hpp"

using namespace ftx;

namespace {

std::string config_path(const std::string& name) { return std::string(FTX_CONFIG_DIR) + "/" + name; }

RunConfig from_toml(const std::string& text)
{
    return parse_config(toml_to_json(text, "inline.toml"));
}

}  // namespace

TEST(Config, TomlAndJsonAgree)
{
    auto a = from_toml(R"(
[model]
kind = "heisenberg"
size = 4
j2 = 0.5
[estimate]
epsilon = 0.01
algorithms = ["qubitization_sequential", "qubitization_product"]
[hardware]
p_phys = 1e-3
n_factories = 4
threads = 2
[simulate]
factories = [1, 4]
threads = [1, 2]
trace = true
)");
    auto b = load_config(config_path("quick.json"));
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Config, DefaultsAreResolved)
{
    auto c = from_toml("[[model]]\nkind = \"spin1_chain\"\nsize = 20\n");
    ASSERT_EQ(c.models.size(), 1u);
    EXPECT_EQ(c.models[0].size, std::vector<int>{20});
    EXPECT_EQ(c.models[0].boundary, "periodic");
    auto t = enumerate_terms(c.models[0].spec());
    EXPECT_EQ(t.count, 240u);
    auto j = to_json(c);
    EXPECT_EQ(j["estimate"]["algorithms"].size(), 5u);
    EXPECT_EQ(j["hardware"]["p_th"].get<double>(), 0.01);
}

TEST(Config, RejectsBadInput)
{
    EXPECT_THROW(from_toml("[model]\nkind = \"ising\"\n"), ConfigError);
    EXPECT_THROW(from_toml("[model]\nkind = \"heisenberg\"\ncolour = 3\n"), ConfigError);
    EXPECT_THROW(from_toml("[estimate]\nepsilon = -1.0\n"), ConfigError);
    EXPECT_THROW(from_toml("[estimate]\nalgorithms = [\"grover\"]\n"), ConfigError);
    EXPECT_THROW(from_toml("[sweep]\nepsilons = []\n"), ConfigError);
    EXPECT_THROW(from_toml("[sweep]\nbeats = \"sometimes\"\n"), ConfigError);
    EXPECT_THROW(from_toml("[simulate]\nthreads = [0]\n"), ConfigError);
    EXPECT_THROW(from_toml("this is not toml"), ConfigError);
    EXPECT_THROW(load_config(config_path("missing.toml")), ConfigError);
}

TEST(Commands, EmptyModelGivesZeroCosts)
{
    auto res = run_estimate(load_config(config_path("empty_model.toml")));
    EXPECT_EQ(res.status, 0);
    const auto& t = res.tables.front();
    ASSERT_EQ(t.rows.size(), 5u);
    auto col = [&](const std::string& n) {
        return static_cast<std::size_t>(std::find(t.columns.begin(), t.columns.end(), n) - t.columns.begin());
    };
    for (const auto& r : t.rows) {
        EXPECT_EQ(r[col("t_count_total")].get<std::int64_t>(), 0);
        EXPECT_EQ(r[col("d")].get<int>(), 0);
    }
}

TEST(Commands, EstimateOneTablePerModelPlusMatrix)
{
    auto c = load_config(config_path("table1.toml"));
    auto res = run_estimate(c);
    ASSERT_EQ(res.tables.size(), c.models.size() + 1);
    EXPECT_EQ(res.tables[0].name, "estimate_heisenberg_6x6");
    const auto& m = res.tables.back();
    EXPECT_EQ(m.name, "estimate_tcount");
    EXPECT_EQ(m.rows.size(), 5u);
    EXPECT_EQ(m.columns.size(), 9u);
}

TEST(Commands, RenderingIsByteReproducible)
{
    auto c = load_config(config_path("quick.json"));
    auto a = run_simulate(c, 1), b = run_simulate(c, 4);
    ASSERT_EQ(a.tables.size(), b.tables.size());
    auto h = output_header(c, "simulate");
    for (std::size_t i = 0; i < a.tables.size(); i++)
        for (auto f : {Format::Json, Format::Csv, Format::Table})
            EXPECT_EQ(render(a.tables[i], f, h), render(b.tables[i], f, h));
    ASSERT_EQ(a.raw.size(), 4u);
    EXPECT_EQ(a.raw, b.raw);
    std::string js = render(a.tables[0], Format::Json, h);
    EXPECT_NE(js.find("\"version\": \"0.1.0\""), std::string::npos);
    EXPECT_NE(js.find("\"config\""), std::string::npos);
    EXPECT_EQ(render(a.tables[1], Format::Csv, h).rfind("# ftx 0.1.0 simulate", 0), 0u);
}

TEST(Commands, SimulateRejectsTooManyThreads)
{
    auto c = from_toml("[[model]]\nkind = \"heisenberg\"\nsize = [2, 2]\nboundary = \"open\"\n[simulate]\nthreads = [64]\n");
    EXPECT_THROW(run_simulate(c), ConfigError);
}

TEST(Commands, SweepCellMatchesEstimate)
{
    auto c = from_toml(R"(
[[model]]
kind = "fermi_hubbard"
size = 4
[estimate]
algorithms = ["qubitization_sequential"]
[sweep]
epsilons = [0.1, 0.01]
p_phys = [1e-4, 1e-3, 2e-2]
beats = "rough"
)");
    auto est = run_estimate(c).tables.front();
    auto sw = run_sweep(c);
    EXPECT_EQ(sw.status, 0);
    const auto& t = sw.tables.front();
    ASSERT_EQ(t.rows.size(), 6u);
    std::size_t dcol = std::find(est.columns.begin(), est.columns.end(), "d") - est.columns.begin();
    EXPECT_EQ(t.rows[4][3], est.rows[0][dcol]);
    EXPECT_EQ(t.rows[5][2].get<bool>(), false);
    EXPECT_EQ(t.rows[5][8].get<std::string>(), "physical error rate above threshold");
}

TEST(Commands, SingleCellSweep)
{
    auto c = from_toml("[[model]]\nkind = \"heisenberg\"\nsize = 4\n[sweep]\nbeats = 9000\n");
    auto t = run_sweep(c).tables.front();
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.summary["beats_per_select"].get<std::int64_t>(), 9000);
}

TEST(Commands, InfeasibleHardwareIsReported)
{
    auto c = from_toml("[[model]]\nkind = \"heisenberg\"\nsize = 4\n[hardware]\np_phys = 0.02\n");
    auto e = run_estimate(c);
    EXPECT_EQ(e.status, 2);
    auto s = run_sweep(c);
    EXPECT_EQ(s.status, 2);
    auto m = run_simulate(c);
    EXPECT_EQ(m.status, 2);
}

TEST(Commands, CrossoverFromShippedData)
{
    auto h = run_crossover(load_config(config_path("crossover_heisenberg.toml")));
    EXPECT_EQ(h.tables[0].summary["crosspoint"].get<double>(), 10.0);
    auto f = run_crossover(load_config(config_path("crossover_fermi_hubbard.toml")));
    EXPECT_LE(f.tables[0].summary["crosspoint"].get<double>(), 6.0);
}

TEST(Commands, QuantumOnlyCrossoverHasNoCrosspoint)
{
    auto c = from_toml("[crossover]\nquantum = [[4, 100.0], [6, 200.0]]\n");
    auto r = run_crossover(c);
    EXPECT_EQ(r.tables[0].summary["crosspoint"].get<std::string>(), "none in range");
    EXPECT_EQ(r.tables[0].rows.size(), 2u);
}

TEST(Commands, MissingClassicalFileIsAConfigError)
{
    auto c = from_toml("[crossover]\nclassical_file = \"/nonexistent/classical.csv\"\n");
    EXPECT_THROW(run_crossover(c), ConfigError);
}

TEST(Config, AlgorithmsAcceptsSingleName)
{
    EXPECT_EQ(from_toml("[estimate]\nalgorithms = \"all\"\n").estimate.algorithms.size(), 5u);
    auto c = from_toml("[estimate]\nalgorithms = \"qdrift\"\n");
    ASSERT_EQ(c.estimate.algorithms.size(), 1u);
    EXPECT_EQ(c.estimate.algorithms[0], AlgorithmKind::QDrift);
}
