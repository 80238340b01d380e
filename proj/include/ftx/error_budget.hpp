#ifndef FTX_ERROR_BUDGET_HPP
#define FTX_ERROR_BUDGET_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ftx {

enum class AlgorithmKind { QDrift, RandomTrotter2, Taylorization, QubitizationSequential, QubitizationProduct };

inline constexpr AlgorithmKind all_algorithms[] = {
    AlgorithmKind::QDrift, AlgorithmKind::RandomTrotter2, AlgorithmKind::Taylorization,
    AlgorithmKind::QubitizationSequential, AlgorithmKind::QubitizationProduct};

inline std::string to_string(AlgorithmKind k)
{
    switch (k) {
    case AlgorithmKind::QDrift: return "qdrift";
    case AlgorithmKind::RandomTrotter2: return "random_trotter2";
    case AlgorithmKind::Taylorization: return "taylorization";
    case AlgorithmKind::QubitizationSequential: return "qubitization_sequential";
    case AlgorithmKind::QubitizationProduct: return "qubitization_product";
    }
    return "?";
}

inline AlgorithmKind algorithm_from_string(const std::string& s)
{
    for (auto k : all_algorithms)
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown algorithm: " + s);
}

inline bool is_qubitization(AlgorithmKind k)
{
    return k == AlgorithmKind::QubitizationSequential || k == AlgorithmKind::QubitizationProduct;
}

struct ErrorBudget {
    AlgorithmKind algorithm = AlgorithmKind::QubitizationSequential;
    double epsilon = 0.0;
    double lambda = 0.0;
    double delta_total = 0.0;
    double delta_pea = 0.0;
    double delta_syn = 0.0;
    double delta_hs = 0.0;
    double delta_rot = 0.0;
    double delta_prep = 0.0;
    std::int64_t r = 0;
    int m = 0;
};

inline constexpr double pea_fraction = 0.9;

// Smallest m with 2^m > r.
inline int readout_digits(std::int64_t r)
{
    if (r < 1) throw std::invalid_argument("readout_digits: r must be >= 1");
    int m = 0;
    while (m < 63 && (std::int64_t{1} << m) <= r) m++;
    return m;
}

inline std::int64_t repetitions(double delta_pea)
{
    double x = std::numbers::pi / (2.0 * delta_pea);
    // guard against 1-ulp overshoot at exact integers
    double rx = std::round(x);
    if (std::abs(x - rx) <= 1e-12 * std::max(1.0, rx)) return static_cast<std::int64_t>(rx);
    return static_cast<std::int64_t>(std::ceil(x));
}

inline ErrorBudget budget_from_target(double epsilon, double lambda, AlgorithmKind algorithm)
{
    if (!(epsilon > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("budget_from_target: epsilon and lambda must be positive");
    ErrorBudget b;
    b.algorithm = algorithm;
    b.epsilon = epsilon;
    b.lambda = lambda;
    b.delta_total = epsilon / lambda;
    b.delta_pea = pea_fraction * b.delta_total;
    b.delta_syn = b.delta_total - b.delta_pea;
    switch (algorithm) {
    case AlgorithmKind::QDrift:
    case AlgorithmKind::RandomTrotter2:
        b.delta_hs = b.delta_rot = b.delta_syn / 2.0;
        break;
    case AlgorithmKind::Taylorization:
        b.delta_hs = b.delta_prep = b.delta_syn / 2.0;
        break;
    case AlgorithmKind::QubitizationSequential:
    case AlgorithmKind::QubitizationProduct:
        b.delta_prep = b.delta_syn;
        break;
    }
    b.r = repetitions(b.delta_pea);
    b.m = readout_digits(b.r);
    return b;
}

}  // namespace ftx

#endif  // FTX_ERROR_BUDGET_HPP
