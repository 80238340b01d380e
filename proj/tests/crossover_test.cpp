#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "ftx/crossover.hpp"

using namespace ftx;

TEST(Fits, ExactLineRecoversIntercept)
{
    std::vector<std::pair<double, double>> pts;
    for (double d : {1e-5, 3e-5, 8e-5, 2e-4}) pts.emplace_back(d, -49.30 + 100.0 * d);
    auto f = extrapolate_ground_energy(pts);
    EXPECT_NEAR(f.a, -49.30, 1e-9 * 49.30);
    EXPECT_NEAR(f.b, 100.0, 1e-9 * 100.0);
    EXPECT_NEAR(f.residual, 0.0, 1e-9);
}

TEST(Fits, NoisyLineWithinThreeSigma)
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 1e-4);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 40; i++) {
        double d = 1e-5 * (i + 1);
        pts.emplace_back(d, -49.30 + 100.0 * d + noise(rng));
    }
    EXPECT_NEAR(extrapolate_ground_energy(pts).a, -49.30, 3e-4);
}

TEST(Fits, DegenerateInputs)
{
    EXPECT_THROW(extrapolate_ground_energy({{1.0, 2.0}}), FitError);
    EXPECT_THROW(extrapolate_ground_energy({{1.0, 2.0}, {1.0, 3.0}}), FitError);
    EXPECT_THROW(fit_power_law({{0.0, 1.0}, {1.0, 2.0}}), FitError);
    EXPECT_THROW(fit_size_scaling({1, 2}, {1, 2}, SizeScaling::Exponential), FitError);
}

TEST(Fits, NoiseFreeRoundTrips)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pa(0.1, 10.0), pb(-3.0, 3.0);
    for (int i = 0; i < 200; i++) {
        double a = pa(rng), b = pb(rng);
        std::vector<std::pair<double, double>> pw, ex, ln;
        for (double x : {1.0, 2.0, 3.5, 5.0, 8.0}) {
            pw.emplace_back(x, a * std::pow(x, b));
            ex.emplace_back(x, a * std::exp(b * x));
            ln.emplace_back(x, a + b * x);
        }
        auto fp = fit_power_law(pw), fe = fit_exponential(ex), fl = extrapolate_ground_energy(ln);
        EXPECT_NEAR(fp.a / a, 1.0, 1e-9);
        EXPECT_NEAR(fp.b, b, 1e-9 * std::max(1.0, std::abs(b)));
        EXPECT_NEAR(fe.a / a, 1.0, 1e-9);
        EXPECT_NEAR(fe.b, b, 1e-9 * std::max(1.0, std::abs(b)));
        EXPECT_NEAR(fl.a, a, 1e-9 * std::max(1.0, std::abs(a)));
        EXPECT_NEAR(fl.b, b, 1e-9 * std::max(1.0, std::abs(b)));
        for (const auto& [x, y] : pw) EXPECT_NEAR(fp(x) / y, 1.0, 1e-9);
    }
}

TEST(Fits, FitIsIndependentOfPointOrder)
{
    std::vector<std::pair<double, double>> a{{1, 3.1}, {2, 4.9}, {3, 7.2}, {4, 8.8}}, b{{3, 7.2}, {1, 3.1}, {4, 8.8}, {2, 4.9}};
    auto fa = extrapolate_ground_energy(a), fb = extrapolate_ground_energy(b);
    EXPECT_EQ(fa.a, fb.a);
    EXPECT_EQ(fa.b, fb.b);
}

TEST(TimeToAccuracy, ClosedFormInversion)
{
    std::vector<TracePoint> tr;
    for (double t = 1.0; t <= 1000.0; t *= 1.5) tr.push_back({t, -10.0 + 10.0 / std::sqrt(t), 100, std::nullopt});
    auto r = fit_time_to_accuracy(tr, -10.0, 0.01);
    EXPECT_NEAR(r.seconds / 1e6, 1.0, 1e-9);
    EXPECT_NEAR(r.fit.b, -0.5, 1e-9);
}

TEST(TimeToAccuracy, NoisyExponentWithinFivePercent)
{
    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise(0.0, 0.02);
    std::vector<TracePoint> tr;
    for (int i = 0; i < 200; i++) {
        double t = 10.0 * std::pow(1.03, i);
        tr.push_back({t, 5.0 + 3.0 * std::pow(t, -1.7) * std::exp(noise(rng)), 50 + i, std::nullopt});
    }
    auto r = fit_time_to_accuracy(tr, 5.0, 1e-6);
    EXPECT_NEAR(r.fit.b / -1.7, 1.0, 0.05);
}

TEST(TimeToAccuracy, Errors)
{
    std::vector<TracePoint> flat;
    for (double t = 1.0; t < 10.0; t += 1.0) flat.push_back({t, 1.0, 10, std::nullopt});
    EXPECT_THROW(fit_time_to_accuracy(flat, 0.0, 0.1), FitError);
    std::vector<TracePoint> tr;
    for (double t = 1.0; t <= 100.0; t *= 2.0) tr.push_back({t, 1.0 / t, 10, std::nullopt});
    EXPECT_THROW(fit_time_to_accuracy(tr, 0.0, 1e-4, 0.5, false), FitError);
    EXPECT_NO_THROW(fit_time_to_accuracy(tr, 0.0, 1e-4, 0.5, true));
    auto bad = tr;
    bad[2].elapsed_s = 0.5;
    EXPECT_THROW(fit_time_to_accuracy(bad, 0.0, 1e-4), FitError);
    EXPECT_THROW(fit_time_to_accuracy(tr, 0.0, -1.0), FitError);
}

TEST(SizeScaling, PublishedHeisenbergEndpoints)
{
    std::vector<double> s{6, 8, 10, 12}, t{2.9, 1.9e2, 7.9e4, 1.3e6};
    auto f = fit_size_scaling(s, t, SizeScaling::Exponential);
    EXPECT_GT(f.b, 0.0);
    for (std::size_t i = 0; i < s.size(); i++) {
        double ratio = f(s[i]) / t[i];
        EXPECT_LT(ratio, 5.0);
        EXPECT_GT(ratio, 0.2);
    }
}

TEST(SizeScaling, QuasiOneDimensionalPrefersPowerLaw)
{
    std::vector<double> s{16, 32, 64}, t{3.6e1, 1.5e3, 1.2e4};
    auto pw = fit_size_scaling(s, t, SizeScaling::PowerLaw);
    auto ex = fit_size_scaling(s, t, SizeScaling::Exponential);
    EXPECT_LT(pw.residual, ex.residual);
}

TEST(SizeScaling, ExactExponentialRecovered)
{
    std::vector<double> s{4, 6, 8, 10}, t;
    for (double x : s) t.push_back(0.25 * std::exp(1.5 * x));
    auto f = fit_size_scaling(s, t, SizeScaling::Exponential);
    EXPECT_NEAR(f.a, 0.25, 1e-9);
    EXPECT_NEAR(f.b, 1.5, 1e-9);
    EXPECT_NEAR(f.residual, 0.0, 1e-9);
}

TEST(Crosspoint, HeisenbergAtTenByTen)
{
    auto f = fit_size_scaling({6, 8, 10, 12}, {2.9, 1.9e2, 7.9e4, 1.3e6}, SizeScaling::Exponential);
    auto rep = find_crosspoint(f, {{4, 1.18e2}, {6, 5.52e2}, {8, 1.66e3}, {10, 4.32e3}, {12, 8.68e3}});
    ASSERT_TRUE(rep.crosspoint.has_value());
    EXPECT_EQ(*rep.crosspoint, 10.0);
    EXPECT_EQ(rep.samples.size(), 5u);
}

TEST(Crosspoint, FermiHubbardNoLaterThanSixBySix)
{
    auto f = fit_size_scaling({4, 6, 8, 10}, {3.6e1, 2.2e5, 1.5e9, 7.1e9}, SizeScaling::Exponential);
    auto rep = find_crosspoint(f, {{4, 2.02e3}, {6, 1.23e4}, {8, 4.01e4}, {10, 1.05e5}});
    ASSERT_TRUE(rep.crosspoint.has_value());
    EXPECT_LE(*rep.crosspoint, 6.0);
}

TEST(Crosspoint, IdenticalCurvesHaveNone)
{
    FitResult f{FitKind::Exponential, 2.0, 0.5, 0.0, 3};
    std::vector<std::pair<double, double>> q;
    for (double s : {2.0, 4.0, 6.0}) q.emplace_back(s, f(s));
    EXPECT_FALSE(find_crosspoint(f, q).crosspoint.has_value());
}

TEST(Crosspoint, SpeedupBoundShiftsCrosspoint)
{
    FitResult f{FitKind::Exponential, 1.0, 1.0, 0.0, 3};
    std::vector<std::pair<double, double>> q{{2, 10.0}, {4, 20.0}, {6, 30.0}};
    EXPECT_EQ(*find_crosspoint(f, q).crosspoint, 4.0);
    EXPECT_EQ(*find_crosspoint(f, q, {}, classical_speedup_bound).crosspoint, 6.0);
}

TEST(Traces, CsvRoundTrip)
{
    std::istringstream is("elapsed_s,energy,bond_dim,trunc_error\n1.5,-3.25,100,1e-5\n2.5,-3.5,200,5e-6\n");
    auto tr = read_trace_csv(is);
    ASSERT_EQ(tr.size(), 2u);
    EXPECT_EQ(tr[1].bond_dim, 200);
    EXPECT_DOUBLE_EQ(*tr[0].trunc_error, 1e-5);
    std::istringstream bad("time,energy\n");
    EXPECT_THROW(read_trace_csv(bad), FitError);
}
