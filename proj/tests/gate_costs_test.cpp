#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ftx/gate_costs.hpp"

using namespace ftx;

namespace {

// Closed forms evaluated directly in floating point.
int oracle_bits(double delta) { return static_cast<int>(std::ceil(std::log2(1.0 / delta) - 1e-12)); }
int oracle_log2(std::int64_t x) { return x <= 1 ? 0 : static_cast<int>(std::ceil(std::log2(static_cast<double>(x)) - 1e-12)); }

}  // namespace

TEST(GateCosts, PrintedExamples)
{
    EXPECT_EQ(tcount_adder(3), 8);
    EXPECT_EQ(tcount_adder(2), 4);
    EXPECT_EQ(tcount_adder(10), 36);
    EXPECT_EQ(tcount_controlled_adder(1, 3), 16);
    EXPECT_EQ(tcount_controlled_adder(1, 2), 8);
    EXPECT_EQ(tcount_controlled_adder(3, 5), 40);
    EXPECT_EQ(tcount_mcx(0), 0);
    EXPECT_EQ(tcount_mcx(1), 0);
    EXPECT_EQ(tcount_mcx(2), 4);
    EXPECT_EQ(tcount_rotation(std::ldexp(1.0, -10)), 16);
    EXPECT_EQ(tcount_rotation(0.5), 7);
    EXPECT_EQ(tcount_rotation(std::ldexp(1.0, -20), {1.0, 0.0}), 20);
}

TEST(GateCosts, DomainErrors)
{
    EXPECT_THROW(tcount_adder(1), CostDomainError);
    EXPECT_THROW(tcount_controlled_adder(0, 3), CostDomainError);
    EXPECT_THROW(tcount_rotation(0.0), CostDomainError);
    EXPECT_THROW(tcount_rotation(1.0), CostDomainError);
    EXPECT_THROW(tcount_power2_adder(3, 2), CostDomainError);
    EXPECT_THROW(tcount_mcx(-1), CostDomainError);
}

TEST(GateCosts, ThousandRandomArgumentsAgainstClosedForms)
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::int64_t> small(1, 200), big(1, 1 << 20);
    std::uniform_real_distribution<double> expo(1.0, 40.0), gam(0.5, 3.0), xi(0.0, 10.0);
    for (int i = 0; i < 1000; i++) {
        std::int64_t m = small(rng), n = small(rng) + 1, l = big(rng);
        std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, n - 2)(rng);
        double delta = std::pow(2.0, -expo(rng));
        SynthesisConstants c{gam(rng), xi(rng)};
        int b = oracle_bits(delta);
        ASSERT_EQ(bits_of_precision(delta), b) << delta;
        EXPECT_EQ(tcount_adder(n), 4 * n - 4);
        EXPECT_EQ(tcount_controlled_adder(m, n), 4 * (m - 1) + 8 * (n - 1));
        if (n - k - 1 >= 1) {
            EXPECT_EQ(tcount_power2_adder(n, k), 4 * (n - k - 1) - 4);
        }
        EXPECT_EQ(tcount_controlled_power2_adder(m, n, k), 4 * (m - 1) + 8 * (n - k - 2));
        EXPECT_EQ(tcount_mcx(m), m <= 1 ? 0 : 4 * (m - 1));
        EXPECT_EQ(tcount_cswap(m), 4 * m);
        EXPECT_EQ(tcount_rotation(delta, c), static_cast<std::int64_t>(std::ceil(c.gamma * b + c.xi - 1e-9)));
        EXPECT_EQ(tcount_controlled_rotation(m, delta, c),
                  static_cast<std::int64_t>(std::ceil(8.0 * (m - 1) + 2 * c.gamma * b + 2 * c.xi - 1e-9)));
        EXPECT_EQ(tcount_uniform(l, delta, c),
                  static_cast<std::int64_t>(std::ceil(8.0 * oracle_log2(l) + 2 * c.gamma * b + 2 * c.xi - 4 - 1e-9)));
    }
}

TEST(GateCosts, MonotoneInSizeArguments)
{
    for (std::int64_t n = 2; n < 100; n++) {
        EXPECT_LE(tcount_adder(n), tcount_adder(n + 1));
        EXPECT_LE(tcount_controlled_adder(2, n), tcount_controlled_adder(2, n + 1));
        EXPECT_LE(tcount_controlled_adder(n, 4), tcount_controlled_adder(n + 1, 4));
        EXPECT_LE(tcount_mcx(n), tcount_mcx(n + 1));
        EXPECT_LE(tcount_uniform(n, 1e-3), tcount_uniform(n + 1, 1e-3));
    }
    double prev = 1e9;
    for (double d = 1e-12; d < 0.9; d *= 1.37) {
        double c = static_cast<double>(tcount_rotation(d));
        EXPECT_LE(c, prev);
        prev = c;
    }
}

TEST(GateCosts, CeilLog2)
{
    EXPECT_EQ(ceil_log2(1), 0);
    EXPECT_EQ(ceil_log2(2), 1);
    EXPECT_EQ(ceil_log2(3), 2);
    EXPECT_EQ(ceil_log2(1024), 10);
    EXPECT_EQ(ceil_log2(1025), 11);
    EXPECT_EQ(bits_of_precision(0.25), 2);
}
