#ifndef FTX_GATE_COSTS_HPP
#define FTX_GATE_COSTS_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ftx {

struct SynthesisConstants {
    double gamma = 1.03;
    double xi = 5.6;
};

class CostDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Smallest k with 2^k >= x; 0 for x <= 1.
inline int ceil_log2(std::int64_t x)
{
    int k = 0;
    while (k < 63 && (std::int64_t{1} << k) < x) k++;
    return k;
}

// ceil(log2(1/delta)), exact on powers of two.
inline int bits_of_precision(double delta)
{
    if (!(delta > 0.0) || !(delta < 1.0))
        throw CostDomainError("synthesis accuracy must lie in (0, 1)");
    int e = 0;
    std::frexp(delta, &e);  // delta = mant * 2^e, mant in [0.5, 1)
    return 1 - e;
}

namespace detail {

inline std::int64_t ceil_to_int(double x)
{
    double r = std::round(x);
    if (std::abs(x - r) < 1e-9) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::ceil(x));
}

inline void require(bool ok, const char* what)
{
    if (!ok) throw CostDomainError(what);
}

}  // namespace detail

inline std::int64_t tcount_adder(std::int64_t n)
{
    detail::require(n >= 2, "tcount_adder: n >= 2");
    return 4 * n - 4;
}

inline std::int64_t tcount_controlled_adder(std::int64_t m, std::int64_t n)
{
    detail::require(m >= 1 && n >= 2, "tcount_controlled_adder: m >= 1, n >= 2");
    return 4 * (m - 1) + 8 * (n - 1);
}

// Addition of the constant 2^k L.
inline std::int64_t tcount_power2_adder(std::int64_t n, std::int64_t k)
{
    detail::require(k >= 0 && n - k - 1 >= 1, "tcount_power2_adder: n >= k + 2");
    return 4 * (n - k - 1) - 4;
}

inline std::int64_t tcount_controlled_power2_adder(std::int64_t m, std::int64_t n, std::int64_t k)
{
    detail::require(m >= 1 && k >= 0 && n - k - 2 >= 0, "tcount_controlled_power2_adder: m >= 1, n >= k + 2");
    return 4 * (m - 1) + 8 * (n - k - 2);
}

inline std::int64_t tcount_mcx(std::int64_t m)
{
    detail::require(m >= 0, "tcount_mcx: m >= 0");
    return m <= 1 ? 0 : 4 * (m - 1);
}

inline std::int64_t tcount_cswap(std::int64_t m)
{
    detail::require(m >= 0, "tcount_cswap: m >= 0");
    return m == 0 ? 0 : 4 * m;
}

inline std::int64_t tcount_rotation(double delta_ss, const SynthesisConstants& c = {})
{
    return detail::ceil_to_int(c.gamma * bits_of_precision(delta_ss) + c.xi);
}

inline std::int64_t tcount_controlled_rotation(std::int64_t m, double delta_ss, const SynthesisConstants& c = {})
{
    detail::require(m >= 1, "tcount_controlled_rotation: m >= 1");
    return detail::ceil_to_int(8.0 * (m - 1) + 2.0 * c.gamma * bits_of_precision(delta_ss) + 2.0 * c.xi);
}

// UNIFORM over 2^k L basis states.
inline std::int64_t tcount_uniform(std::int64_t l, double delta_ss, const SynthesisConstants& c = {})
{
    detail::require(l >= 1, "tcount_uniform: L >= 1");
    return detail::ceil_to_int(8.0 * ceil_log2(l) + 2.0 * c.gamma * bits_of_precision(delta_ss) + 2.0 * c.xi - 4.0);
}

inline std::int64_t tcount_controlled_uniform(std::int64_t m, std::int64_t k, std::int64_t l, double delta_ss,
                                              const SynthesisConstants& c = {})
{
    detail::require(m >= 1 && k >= 0 && l >= 1, "tcount_controlled_uniform: m >= 1, k >= 0, L >= 1");
    return detail::ceil_to_int(4.0 * (m - 1) + 2.0 * k + 10.0 * ceil_log2(l) +
                               2.0 * c.gamma * bits_of_precision(delta_ss) + 2.0 * c.xi - 4.0);
}

// Arbitrary n-qubit state synthesis: 2^{n+1} - 2 rotations.
inline std::int64_t tcount_state_synthesis(std::int64_t n, double delta_ss, const SynthesisConstants& c = {})
{
    detail::require(n >= 1 && n < 62, "tcount_state_synthesis: 1 <= n < 62");
    return ((std::int64_t{1} << (n + 1)) - 2) * tcount_rotation(delta_ss, c);
}

}  // namespace ftx

#endif  // FTX_GATE_COSTS_HPP
