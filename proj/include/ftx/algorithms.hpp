#ifndef FTX_ALGORITHMS_HPP
#define FTX_ALGORITHMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ftx/error_budget.hpp"
#include "ftx/gate_costs.hpp"
#include "ftx/lattice.hpp"

namespace ftx {

enum class OracleFlavor { Sequential, Product };

// Per-rotation charge of the Trotter family: the printed Γlog+Ξ form or a singly-controlled rotation.
enum class RotationCharge { Single, Controlled };

enum class RepetitionAccounting { HodgesLehmann, SingleShot };

enum class ProductPrepareForm { Caption, Text };

struct CostOptions {
    SynthesisConstants consts;
    RotationCharge rotation_charge = RotationCharge::Single;
    RepetitionAccounting qdrift_accounting = RepetitionAccounting::HodgesLehmann;
    double failure_probability = 0.5;  // single-shot qDRIFT only
    ProductPrepareForm heisenberg_product_prepare = ProductPrepareForm::Caption;
};

struct OracleCost {
    std::int64_t t_count = 0;
    int n_ancilla = 0;
    int n_rotations = 0;
    double delta_ss = 0.0;
};

struct CostReport {
    AlgorithmKind algorithm = AlgorithmKind::QubitizationSequential;
    std::int64_t n_rotations = 0;
    std::int64_t t_count_total = 0;
    std::int64_t t_count_per_select = 0;
    std::int64_t t_depth_per_select = 0;
    std::int64_t r = 0;
    int taylor_order = 0;
    int n_logical = 0;
    std::int64_t prepare_t = 0;
    std::int64_t reflection_t = 0;
    double delta_ss = 0.0;
    ErrorBudget budget;
};

inline OracleFlavor flavor_of(AlgorithmKind k)
{
    return k == AlgorithmKind::QubitizationProduct ? OracleFlavor::Product : OracleFlavor::Sequential;
}

namespace detail {

inline void require_terms(const TermTable& t)
{
    if (t.count == 0 || !(t.lambda > 0.0))
        throw std::invalid_argument("cost model requires a non-empty Hamiltonian");
}

// A logical AND has T-depth 2 per 4 T.
inline std::int64_t and_depth(std::int64_t t_count) { return (t_count + 1) / 2; }

inline std::int64_t checked_ceil(double x)
{
    if (!(x < 9.0e18)) throw std::overflow_error("T-count exceeds 64-bit range");
    return static_cast<std::int64_t>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))));
}

}  // namespace detail

inline OracleCost select_cost(const TermTable& t, OracleFlavor flavor)
{
    if (t.count == 0) throw std::invalid_argument("select_cost: empty term table");
    OracleCost c;
    int log_l = ceil_log2(static_cast<std::int64_t>(t.count));
    int log_n = ceil_log2(t.n_system);
    if (flavor == OracleFlavor::Sequential) {
        if (t.kind == ModelKind::FermiHubbard)
            c.t_count = 18 * static_cast<std::int64_t>(t.n_system);
        else
            c.t_count = 4 * static_cast<std::int64_t>(t.count) - 4;
        c.n_ancilla = std::max(0, log_l - 1);
    } else {
        if (t.kind == ModelKind::FermiHubbard)
            c.t_count = 10 * static_cast<std::int64_t>(t.n_system);
        else
            c.t_count = std::llround(48.0 * t.spin * t.n_site) - 4;
        c.n_ancilla = t.locality * log_n;
    }
    c.t_count = std::max<std::int64_t>(0, c.t_count);
    return c;
}

// Closed form for a G-local product-wise PREPARE.
inline std::int64_t prepare_cost_general(int g, int n_system, int n_mu_alpha, double delta_ss)
{
    int log_n = ceil_log2(n_system);
    int log_ma = ceil_log2(n_mu_alpha);
    int b = bits_of_precision(delta_ss);
    return 8LL * g * log_n + 4LL * (g - 1) * log_ma + static_cast<std::int64_t>(n_mu_alpha + 2) * b;
}

// Rotation count of one PREPARE call, used to split the synthesis budget.
inline int prepare_rotations(const TermTable& t, OracleFlavor flavor)
{
    switch (t.kind) {
    case ModelKind::Heisenberg: return flavor == OracleFlavor::Sequential ? 4 : 7;
    case ModelKind::FermiHubbard: return flavor == OracleFlavor::Sequential ? 4 : 6;
    case ModelKind::Chain: return 8;
    }
    return 4;
}

inline std::int64_t prepare_tcount_at(const TermTable& t, OracleFlavor flavor, double delta_ss,
                                      const CostOptions& opt)
{
    int log_n = ceil_log2(t.n_system);
    int b = bits_of_precision(delta_ss);
    double g = opt.consts.gamma;
    auto rot = [&](double coeff) { return detail::checked_ceil(coeff * g * b); };
    switch (t.kind) {
    case ModelKind::Heisenberg:
        if (flavor == OracleFlavor::Sequential) return 8LL * log_n + rot(4);
        if (opt.heisenberg_product_prepare == ProductPrepareForm::Text) return 20LL * log_n + 48LL * b;
        return 14LL * log_n + rot(7);
    case ModelKind::FermiHubbard:
        if (flavor == OracleFlavor::Sequential) return 8LL * log_n + 4LL * b;
        return 16LL * log_n + rot(6);
    case ModelKind::Chain:
        if (flavor == OracleFlavor::Sequential) return 8LL * log_n + rot(8);
        return 12LL * log_n + 8LL * b;
    }
    return 0;
}

inline int prepare_ancilla(const TermTable& t, OracleFlavor flavor)
{
    if (flavor == OracleFlavor::Sequential)
        return ceil_log2(static_cast<std::int64_t>(t.count)) + 1;
    int log_n = ceil_log2(t.n_system);
    return (t.locality + 1) * log_n + ceil_log2(static_cast<std::int64_t>(t.n_alpha) * t.n_mu);
}

// `calls` is the number of PREPARE invocations sharing delta_prep.
inline OracleCost prepare_cost(const TermTable& t, OracleFlavor flavor, const ErrorBudget& budget,
                               const CostOptions& opt = {}, std::int64_t calls = 0)
{
    detail::require_terms(t);
    if (calls <= 0) calls = 2 * budget.r;
    OracleCost c;
    c.n_rotations = prepare_rotations(t, flavor);
    c.delta_ss = budget.delta_prep / (static_cast<double>(calls) * c.n_rotations);
    c.t_count = prepare_tcount_at(t, flavor, c.delta_ss, opt);
    c.n_ancilla = prepare_ancilla(t, flavor);
    return c;
}

inline std::int64_t reflection_cost(int register_width) { return tcount_mcx(register_width + 1); }

inline CostReport tcount_qubitization(const TermTable& t, const ErrorBudget& budget, OracleFlavor flavor,
                                      const CostOptions& opt = {})
{
    detail::require_terms(t);
    CostReport rep;
    rep.algorithm = flavor == OracleFlavor::Sequential ? AlgorithmKind::QubitizationSequential
                                                       : AlgorithmKind::QubitizationProduct;
    rep.budget = budget;
    rep.r = budget.r;
    OracleCost sel = select_cost(t, flavor);
    OracleCost prep = prepare_cost(t, flavor, budget, opt);
    rep.prepare_t = prep.t_count;
    rep.reflection_t = reflection_cost(prep.n_ancilla);
    rep.delta_ss = prep.delta_ss;
    rep.t_count_per_select = sel.t_count;
    rep.t_depth_per_select = detail::and_depth(sel.t_count);
    std::int64_t step = 2 * prep.t_count + sel.t_count + 2 * rep.reflection_t;
    rep.t_count_total = budget.r * step;
    rep.n_logical = t.n_system + prep.n_ancilla + sel.n_ancilla + budget.m;
    return rep;
}

inline int taylor_order(std::int64_t r, double delta_hs)
{
    if (r < 1 || !(delta_hs > 0.0) || !(delta_hs < 1.0))
        throw std::invalid_argument("taylor_order: r >= 1 and 0 < delta_hs < 1");
    double x = 2.0 * static_cast<double>(r) / delta_hs;
    double lx = std::log(x);
    if (!(lx > 0.0) || !(std::log(lx) + 1.0 > 0.0))
        throw std::invalid_argument("taylor_order: inner logarithm not positive");
    double k = -1.0 + 2.0 * lx / (std::log(lx) + 1.0);
    return static_cast<int>(std::ceil(k - 1e-12));
}

inline CostReport tcount_taylorization(const TermTable& t, const ErrorBudget& budget, const CostOptions& opt = {},
                                       int forced_order = -1)
{
    detail::require_terms(t);
    CostReport rep;
    rep.algorithm = AlgorithmKind::Taylorization;
    rep.budget = budget;
    rep.r = budget.r;
    int k = forced_order >= 0 ? forced_order : taylor_order(budget.r, budget.delta_hs);
    if (k < 1) throw std::invalid_argument("taylorization: truncation order must be >= 1");
    rep.taylor_order = k;
    OracleCost sel = select_cost(t, OracleFlavor::Sequential);
    // three walk applications per segment, each with PREPARE and PREPARE^dagger
    OracleCost prep = prepare_cost(t, OracleFlavor::Sequential, budget, opt, 6 * budget.r * k);
    int log_l = ceil_log2(static_cast<std::int64_t>(t.count));
    int anc = k * log_l + ceil_log2(k);
    rep.prepare_t = static_cast<std::int64_t>(k) * prep.t_count;
    rep.reflection_t = reflection_cost(anc);
    rep.delta_ss = prep.delta_ss;
    rep.t_count_per_select = static_cast<std::int64_t>(k) * sel.t_count;
    rep.t_depth_per_select = detail::and_depth(rep.t_count_per_select);
    std::int64_t segment = 3 * (2 * rep.prepare_t + rep.t_count_per_select) + 2 * rep.reflection_t;
    rep.t_count_total = budget.r * segment;
    rep.n_logical = t.n_system + anc + k * sel.n_ancilla + budget.m;
    return rep;
}

namespace detail {

inline CostReport trotter_family(const TermTable& t, const ErrorBudget& budget, const CostOptions& opt,
                                 AlgorithmKind kind, double n_rot)
{
    CostReport rep;
    rep.algorithm = kind;
    rep.budget = budget;
    rep.r = budget.r;
    rep.n_rotations = checked_ceil(n_rot);
    rep.delta_ss = budget.delta_syn / (2.0 * static_cast<double>(rep.n_rotations));
    std::int64_t per = opt.rotation_charge == RotationCharge::Single
                           ? tcount_rotation(rep.delta_ss, opt.consts)
                           : tcount_controlled_rotation(1, rep.delta_ss, opt.consts);
    rep.t_count_per_select = per;
    rep.t_depth_per_select = per;
    double total = static_cast<double>(rep.n_rotations) * static_cast<double>(per);
    if (!(total < 9.0e18)) throw std::overflow_error("T-count exceeds 64-bit range");
    rep.t_count_total = rep.n_rotations * per;
    rep.n_logical = t.n_system;
    return rep;
}

}  // namespace detail

inline double qdrift_rotation_count(double lambda, double epsilon, const CostOptions& opt = {})
{
    double base = lambda * lambda / (epsilon * epsilon);
    if (opt.qdrift_accounting == RepetitionAccounting::HodgesLehmann) return 35.5192 * base;
    double pf = 1.5 * opt.failure_probability;
    return 133.0 * base / (pf * pf * pf);
}

inline CostReport tcount_qdrift(const TermTable& t, const ErrorBudget& budget, const CostOptions& opt = {})
{
    detail::require_terms(t);
    return detail::trotter_family(t, budget, opt, AlgorithmKind::QDrift,
                                  qdrift_rotation_count(budget.lambda, budget.epsilon, opt));
}

inline double trotter2_rotation_count(double lambda_max, std::size_t l, double epsilon)
{
    double ll = static_cast<double>(l);
    return 16.0 * lambda_max * lambda_max * lambda_max * ll * ll / std::pow(epsilon, 1.5);
}

inline CostReport tcount_trotter2(const TermTable& t, const ErrorBudget& budget, const CostOptions& opt = {})
{
    detail::require_terms(t);
    return detail::trotter_family(t, budget, opt, AlgorithmKind::RandomTrotter2,
                                  trotter2_rotation_count(t.lambda_max, t.count, budget.epsilon));
}

inline CostReport estimate(const TermTable& t, AlgorithmKind kind, double epsilon, const CostOptions& opt = {})
{
    detail::require_terms(t);
    ErrorBudget b = budget_from_target(epsilon, t.lambda, kind);
    switch (kind) {
    case AlgorithmKind::QDrift: return tcount_qdrift(t, b, opt);
    case AlgorithmKind::RandomTrotter2: return tcount_trotter2(t, b, opt);
    case AlgorithmKind::Taylorization: return tcount_taylorization(t, b, opt);
    case AlgorithmKind::QubitizationSequential: return tcount_qubitization(t, b, OracleFlavor::Sequential, opt);
    case AlgorithmKind::QubitizationProduct: return tcount_qubitization(t, b, OracleFlavor::Product, opt);
    }
    throw std::logic_error("unknown algorithm");
}

inline std::vector<CostReport> estimate_all(const TermTable& t, double epsilon, const CostOptions& opt = {})
{
    std::vector<CostReport> out;
    for (auto k : all_algorithms) out.push_back(estimate(t, k, epsilon, opt));
    return out;
}

struct AspParams {
    double beta = 1.5;
    double alpha = 0.5;
    double prefactor = 0.5;
};

// Adiabatic preparation time c * N^(alpha*beta) * ln(1/eps_f).
inline double asp_time_estimate(int n_sites, double epsilon_f, const AspParams& p = {})
{
    if (!(epsilon_f > 0.0) || !(epsilon_f < 1.0))
        throw std::invalid_argument("asp_time_estimate: 0 < epsilon_f < 1");
    if (n_sites < 1) throw std::invalid_argument("asp_time_estimate: n_sites >= 1");
    return p.prefactor * std::pow(static_cast<double>(n_sites), p.alpha * p.beta) * std::log(1.0 / epsilon_f);
}

}  // namespace ftx

#endif  // FTX_ALGORITHMS_HPP
