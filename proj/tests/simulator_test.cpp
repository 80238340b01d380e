#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "data_util.hpp"
#include "ftx/sim/simulator.hpp"

using namespace ftx;
using namespace ftx::sim;

namespace {

HardwareSpec hw_for(int nf, int b)
{
    HardwareSpec hw;
    hw.n_factories = nf;
    hw.threads = b;
    return hw;
}

// First n terms of a small chain, each touching one or two qubits.
TermTable truncated(std::size_t n)
{
    auto t = testdata::model_table("spin1_chain", 4);
    t.terms.resize(n);
    t.count = n;
    return t;
}

}  // namespace

TEST(FloorPlan, InvariantsHoldAcrossConfigurations)
{
    for (const char* m : {"heisenberg", "fermi_hubbard", "spin1_chain"}) {
        auto t = testdata::model_table(m, std::string(m) == "spin1_chain" ? 10 : 4);
        for (int b : {1, 2, 16}) {
            for (int nf : {1, 4, 16}) {
                auto hw = hw_for(nf, b);
                for (auto layout : {ControlLayout::Strip, ControlLayout::Block}) {
                    auto plan = build_floor_plan(t, hw, {16, 11, layout});
                    EXPECT_EQ(check_floor_plan(plan, hw), "") << m << " b=" << b << " nf=" << nf;
                    EXPECT_EQ(static_cast<int>(plan.factory_ports.size()), nf);
                    EXPECT_EQ(static_cast<int>(plan.placement.size()), plan.regs.n_qubits);
                    for (int q = 0; q < t.n_system; q++)
                        EXPECT_EQ(plan.role(plan.placement[q]), CellRole::System);
                    for (int q = t.n_system; q < plan.regs.n_qubits; q++)
                        EXPECT_EQ(plan.role(plan.placement[q]), CellRole::Control);
                }
            }
        }
    }
}

TEST(FloorPlan, AsciiHasOneLinePerRow)
{
    auto t = testdata::model_table("heisenberg", 4);
    auto plan = build_floor_plan(t, hw_for(2, 2));
    std::ostringstream os;
    write_ascii(os, plan);
    std::string s = os.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), plan.rows);
}

TEST(Program, FiveTermsNeedFourAndsAndSixteenMagicStates)
{
    ProgramStats st;
    auto prog = synthesize_select(truncated(5), 1, &st);
    EXPECT_EQ(st.ands, 4);
    EXPECT_EQ(st.magic, 16);
    EXPECT_EQ(count_magic(prog), 16);
}

TEST(Program, UnaryIterationUsesLMinusOneAnds)
{
    for (std::size_t l : {1, 2, 3, 7, 8, 9, 30}) {
        ProgramStats st;
        auto prog = synthesize_select(truncated(l), 1, &st);
        EXPECT_EQ(st.ands, static_cast<std::int64_t>(l) - 1) << l;
        EXPECT_EQ(st.magic, 4 * (static_cast<std::int64_t>(l) - 1));
    }
}

TEST(Program, SingleTermHasNoToffoli)
{
    ProgramStats st;
    auto prog = synthesize_select(truncated(1), 1, &st);
    EXPECT_EQ(st.ands, 0);
    EXPECT_EQ(count_magic(prog), 0);
    EXPECT_FALSE(prog.empty());
}

TEST(Program, ThreadCountBounds)
{
    EXPECT_THROW(synthesize_select(truncated(3), 4), std::invalid_argument);
    EXPECT_THROW(synthesize_select(truncated(3), 0), std::invalid_argument);
    EXPECT_TRUE(synthesize_select(truncated(0), 1).empty());
}

TEST(Program, DependenciesPointBackwardsToMeasurements)
{
    auto t = testdata::model_table("fermi_hubbard", 4);
    for (int b : {1, 4, 16}) {
        auto prog = synthesize_select(t, b);
        for (std::size_t i = 0; i < prog.size(); i++) {
            ASSERT_EQ(prog[i].id, static_cast<int>(i));
            if (prog[i].kind != OpKind::ConditionalClifford) continue;
            ASSERT_GE(prog[i].depends_on, 0);
            ASSERT_LT(prog[i].depends_on, prog[i].id);
            auto k = prog[prog[i].depends_on].kind;
            EXPECT_TRUE(k == OpKind::SurgeryMeasure || k == OpKind::MeasureSingle);
        }
    }
}

TEST(Simulator, EmptyProgramTakesNoTime)
{
    auto t = testdata::model_table("heisenberg", 4);
    auto hw = hw_for(1, 1);
    auto plan = build_floor_plan(t, hw);
    auto r = simulate(plan, {}, hw);
    EXPECT_EQ(r.total_beats, 0);
    EXPECT_EQ(r.instructions, 0);
}

TEST(Simulator, Deterministic)
{
    auto t = testdata::model_table("fermi_hubbard", 4);
    SimOptions o;
    o.trace = true;
    auto a = simulate_select(t, hw_for(4, 4), o);
    auto b = simulate_select(t, hw_for(4, 4), o);
    EXPECT_EQ(a.result.total_beats, b.result.total_beats);
    std::ostringstream sa, sb;
    write_trace_csv(sa, a.result);
    write_trace_csv(sb, b.result);
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_FALSE(a.result.trace.empty());
}

TEST(Simulator, SingleFactoryIsSupplyBound)
{
    for (const char* m : {"heisenberg", "fermi_hubbard"}) {
        auto t = testdata::model_table(m, 4);
        auto run = simulate_select(t, hw_for(1, 1));
        double supply = 15.0 * run.magic_expected;
        EXPECT_EQ(run.result.magic_consumed, run.magic_expected);
        EXPECT_GE(run.result.total_beats, supply) << m;
        EXPECT_LE(run.result.total_beats, 2.0 * supply) << m;
        EXPECT_GE(run.result.total_beats, run.critical_path);
    }
}

TEST(Simulator, MoreFactoriesNeverSlower)
{
    auto t = testdata::model_table("heisenberg", 4);
    for (int b : {1, 16}) {
        std::int64_t prev = INT64_MAX;
        for (int nf : {1, 4, 16}) {
            auto beats = simulate_select(t, hw_for(nf, b)).result.total_beats;
            EXPECT_LE(beats, prev) << "b=" << b << " nf=" << nf;
            prev = beats;
        }
    }
}

TEST(Simulator, ReactionLatencyDelaysCorrections)
{
    auto t = testdata::model_table("heisenberg", 4);
    SimOptions fast, slow;
    fast.trace = slow.trace = true;
    slow.reaction_beats = 5;
    auto a = simulate_select(t, hw_for(16, 16), fast);
    auto b = simulate_select(t, hw_for(16, 16), slow);
    EXPECT_GT(b.result.total_beats, a.result.total_beats);

    auto prog = synthesize_select(t, 16);
    std::map<int, std::int64_t> start, finish;
    for (const auto& row : b.result.trace) (std::string(row.status) == "start" ? start : finish)[row.id] = row.beat;
    for (const auto& in : prog) {
        if (in.kind == OpKind::ConditionalClifford) {
            EXPECT_GE(start.at(in.id), finish.at(in.depends_on) + 5);
        }
    }
}

TEST(Simulator, ReactionBeatsFromHardware)
{
    HardwareSpec hw;
    EXPECT_EQ(reaction_beats_for(hw, 10), 1);
    EXPECT_EQ(reaction_beats_for(hw, 3), 4);
    EXPECT_THROW(reaction_beats_for(hw, 0), std::invalid_argument);
}

TEST(Simulator, MagicWithoutFactoriesIsAnError)
{
    auto t = testdata::model_table("heisenberg", 4);
    auto hw = hw_for(0, 1);
    auto plan = build_floor_plan(t, hw);
    auto prog = synthesize_select(t, plan.regs);
    EXPECT_THROW(simulate(plan, prog, hw), SimulationError);
}

TEST(Simulator, ConflictCheckingFindsNoOverlaps)
{
    auto t = testdata::model_table("fermi_hubbard", 4);
    SimOptions o;
    o.check_conflicts = true;
    EXPECT_NO_THROW(simulate_select(t, hw_for(4, 4), o));
}

TEST(Simulator, ClosedFormBounds)
{
    HardwareSpec hw;
    auto cf = runtime_closed_forms(156, 19, 16, hw);
    EXPECT_DOUBLE_EQ(cf.t_count_limited, 15.0 * 19 * 1e-6 * 4 * 156);
    EXPECT_DOUBLE_EQ(cf.reaction_limited, 1e-5 * 4 * 156 / 16);
    EXPECT_EQ(supply_bound_beats(100, hw_for(1, 1)), 1500);
}
