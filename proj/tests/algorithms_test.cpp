#include <gtest/gtest.h>

#include <cmath>

#include "ftx/algorithms.hpp"

using namespace ftx;

namespace {

TermTable heis(int l) { return enumerate_terms(square(l, HeisenbergJ1J2{1.0, 0.5, 0.5})); }
TermTable fh(int l) { return enumerate_terms(square(l, FermiHubbard{1.0, 4.0})); }

}  // namespace

TEST(Algorithms, TaylorOrder)
{
    double k = -1.0 + 2.0 * std::log(2.0 * 36652 / (0.01 / 4200.0)) /
                          (std::log(std::log(2.0 * 36652 / (0.01 / 4200.0))) + 1.0);
    EXPECT_EQ(taylor_order(36652, 0.01 / 4200.0), static_cast<int>(std::ceil(k)));
    EXPECT_EQ(taylor_order(36652, 0.01 / 4200.0), 11);
    EXPECT_EQ(taylor_order(1, 0.5), 2);
    int prev = 0;
    for (std::int64_t r = 1; r < 1000000; r *= 3) {
        int kk = taylor_order(r, 1e-4);
        EXPECT_GE(kk, prev);
        prev = kk;
    }
}

TEST(Algorithms, RotationCountsAtUnitArguments)
{
    EXPECT_EQ(static_cast<std::int64_t>(std::ceil(qdrift_rotation_count(1.0, 1.0))), 36);
    EXPECT_DOUBLE_EQ(trotter2_rotation_count(1.0, 1, 1.0), 16.0);
}

TEST(Algorithms, SelectClosedForms)
{
    for (int l : {4, 6, 8, 10}) {
        auto t = fh(l);
        auto seq = select_cost(t, OracleFlavor::Sequential).t_count;
        auto prod = select_cost(t, OracleFlavor::Product).t_count;
        EXPECT_EQ(seq, 18LL * t.n_system);
        EXPECT_EQ(prod, 10LL * t.n_system);
        EXPECT_EQ(prod * 18, seq * 10);
    }
    for (int l : {4, 6, 8, 10, 12}) {
        auto t = heis(l);
        auto seq = select_cost(t, OracleFlavor::Sequential).t_count;
        auto prod = select_cost(t, OracleFlavor::Product).t_count;
        EXPECT_EQ(seq, 4LL * static_cast<std::int64_t>(t.count) - 4);
        EXPECT_EQ(prod, 24LL * t.n_site - 4);
        double ratio = static_cast<double>(prod) / seq;
        EXPECT_NEAR(ratio, 0.5, l >= 8 ? 0.08 : 0.12) << l;
    }
}

TEST(Algorithms, QubitizationIsCheapestOnTheGrid)
{
    for (int l : {6, 10, 20}) {
        for (const auto& t : {heis(l), fh(l)}) {
            auto reps = estimate_all(t, 0.01);
            std::int64_t q = std::min(reps[3].t_count_total, reps[4].t_count_total);
            for (int i = 0; i < 3; i++) EXPECT_LT(q, reps[i].t_count_total) << l << " " << to_string(reps[i].algorithm);
        }
    }
}

TEST(Algorithms, QubitizationTotalIsRepetitionsTimesStep)
{
    auto t = heis(6);
    auto rep = estimate(t, AlgorithmKind::QubitizationSequential, 0.01);
    EXPECT_EQ(rep.r, 12567);
    EXPECT_EQ(rep.t_count_total, rep.r * (2 * rep.prepare_t + rep.t_count_per_select + 2 * rep.reflection_t));
    EXPECT_LE(rep.t_depth_per_select, rep.t_count_per_select);
    EXPECT_GT(rep.n_logical, t.n_system);
}

TEST(Algorithms, OrderOfMagnitudeSpotChecks)
{
    auto h6 = heis(6);
    EXPECT_NEAR(h6.lambda, 72.0, 1e-9);
    auto q10 = estimate(heis(10), AlgorithmKind::QubitizationSequential, 0.01).t_count_total;
    EXPECT_LT(std::abs(std::log10(q10 / 8.00e8)), 1.0);
    auto p6 = estimate(fh(6), AlgorithmKind::QubitizationProduct, 0.01).t_count_total;
    EXPECT_LT(std::abs(std::log10(p6 / 5.57e7)), 1.0);
    auto t6 = estimate(fh(6), AlgorithmKind::Taylorization, 0.01).t_count_total;
    EXPECT_LT(std::abs(std::log10(t6 / 2.59e9)), 1.0);
    auto r6 = estimate(h6, AlgorithmKind::RandomTrotter2, 0.01).t_count_total;
    EXPECT_LT(std::abs(std::log10(r6 / 3.64e9)), 1.0);
}

TEST(Algorithms, ControlledRotationChargeIsMoreExpensive)
{
    CostOptions single, controlled;
    controlled.rotation_charge = RotationCharge::Controlled;
    auto t = fh(6);
    auto a = estimate(t, AlgorithmKind::RandomTrotter2, 0.01, single).t_count_total;
    auto b = estimate(t, AlgorithmKind::RandomTrotter2, 0.01, controlled).t_count_total;
    EXPECT_GT(b, a);
}

TEST(Algorithms, EmptyHamiltonianIsRejected)
{
    auto t = enumerate_terms(LatticeSpec{{1, 1}, {Boundary::Open, Boundary::Open}, HeisenbergJ1J2{1.0, 0.5, 0.5}});
    for (auto k : all_algorithms) EXPECT_THROW(estimate(t, k, 0.01), std::invalid_argument);
}

TEST(Algorithms, AspTimeIsPositiveAndGrows)
{
    EXPECT_GT(asp_time_estimate(16, 0.01), 0.0);
    EXPECT_LT(asp_time_estimate(16, 0.01), asp_time_estimate(100, 0.01));
}
