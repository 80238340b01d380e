#ifndef FTX_LATTICE_HPP
#define FTX_LATTICE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ftx {

enum class Boundary { Periodic, Open };

struct HeisenbergJ1J2 {
    double j1 = 1.0;
    double j2 = 0.0;
    double spin = 0.5;
};

struct FermiHubbard {
    double t = 1.0;
    double u = 4.0;
};

struct HeisenbergChain {
    double spin = 1.0;
    double j = 1.0;
};

using ModelParams = std::variant<HeisenbergJ1J2, FermiHubbard, HeisenbergChain>;

struct LatticeSpec {
    std::vector<int> extents;
    std::vector<Boundary> boundary;
    ModelParams model;
};

enum class Axis : std::uint8_t { X, Y, Z };

inline char axis_char(Axis a) { return "XYZ"[static_cast<int>(a)]; }

struct PauliFactor {
    int qubit;
    Axis axis;
    friend bool operator==(const PauliFactor&, const PauliFactor&) = default;
    friend auto operator<=>(const PauliFactor&, const PauliFactor&) = default;
};

struct PauliTerm {
    double weight = 0.0;
    std::vector<PauliFactor> factors;
    int alpha = 0;  // interaction type
    int mu = 0;     // displacement class
};

// Lattice position of a system qubit; `sub` is the spin-copy or fermion spin index.
struct QubitCoord {
    int x = 0;
    int y = 0;
    int sub = 0;
};

enum class ModelKind { Heisenberg, FermiHubbard, Chain };

struct TermTable {
    ModelKind kind = ModelKind::Heisenberg;
    double spin = 0.5;
    std::vector<PauliTerm> terms;
    double lambda = 0.0;
    std::size_t count = 0;
    double lambda_max = 0.0;
    int n_system = 0;
    int n_site = 0;
    int locality = 0;
    int n_alpha = 0;
    int n_mu = 0;
    int width = 0;   // lattice extent along x
    int height = 0;  // lattice extent along y (1 for chains)
    int qubits_per_site = 1;
    std::vector<QubitCoord> coords;
};

class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline double neumaier_sum(std::vector<double> xs)
{
    std::sort(xs.begin(), xs.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    return s + c;
}

inline int wrap(int v, int n) { return ((v % n) + n) % n; }

// Undirected site pairs for displacement (dx, dy), deduplicated.
inline std::vector<std::pair<int, int>>
bonds_2d(int lx, int ly, Boundary bx, Boundary by, int dx, int dy)
{
    std::vector<std::pair<int, int>> out;
    std::set<std::pair<int, int>> seen;
    for (int y = 0; y < ly; y++) {
        for (int x = 0; x < lx; x++) {
            int nx = x + dx, ny = y + dy;
            if (nx < 0 || nx >= lx) {
                if (bx == Boundary::Open || lx <= 2) continue;
                nx = wrap(nx, lx);
            }
            if (ny < 0 || ny >= ly) {
                if (by == Boundary::Open || ly <= 2) continue;
                ny = wrap(ny, ly);
            }
            int a = x + y * lx, b = nx + ny * lx;
            if (a == b) continue;
            auto key = std::minmax(a, b);
            if (!seen.insert(key).second) continue;
            out.emplace_back(key.first, key.second);
        }
    }
    return out;
}

inline int spin_copies(double s)
{
    double two_s = 2.0 * s;
    int n = static_cast<int>(std::lround(two_s));
    if (n < 1 || std::abs(two_s - n) > 1e-12)
        throw ModelError("spin must be a positive half-integer");
    return n;
}

inline void finalize(TermTable& t)
{
    t.count = t.terms.size();
    std::vector<double> w;
    w.reserve(t.count);
    std::set<int> alphas, mus;
    t.lambda_max = 0.0;
    t.locality = 0;
    for (const auto& term : t.terms) {
        w.push_back(term.weight);
        t.lambda_max = std::max(t.lambda_max, term.weight);
        t.locality = std::max(t.locality, static_cast<int>(term.factors.size()));
        alphas.insert(term.alpha);
        mus.insert(term.mu);
    }
    t.lambda = neumaier_sum(std::move(w));
    t.n_alpha = static_cast<int>(alphas.size());
    t.n_mu = static_cast<int>(mus.size());
}

inline void check_spec(const LatticeSpec& spec)
{
    if (spec.extents.empty())
        throw ModelError("extents must be non-empty");
    if (spec.boundary.size() != spec.extents.size())
        throw ModelError("boundary list length must equal extents length");
    for (int e : spec.extents)
        if (e < 1) throw ModelError("extents must be >= 1");
}

inline void add_spin_bonds(TermTable& t, const std::vector<std::pair<int, int>>& bonds,
                           double j, int copies, int mu)
{
    if (j == 0.0) return;
    for (auto [a, b] : bonds) {
        for (int na = 0; na < copies; na++) {
            for (int nb = 0; nb < copies; nb++) {
                for (int ax = 0; ax < 3; ax++) {
                    PauliTerm term;
                    term.weight = j / 4.0;
                    term.factors = {{a * copies + na, static_cast<Axis>(ax)},
                                    {b * copies + nb, static_cast<Axis>(ax)}};
                    term.alpha = ax;
                    term.mu = mu;
                    t.terms.push_back(std::move(term));
                }
            }
        }
    }
}

inline TermTable heisenberg_2d(const LatticeSpec& spec, const HeisenbergJ1J2& m)
{
    if (m.j1 <= 0.0 || m.j2 < 0.0) throw ModelError("require j1 > 0 and j2 >= 0");
    if (spec.extents.size() != 2) throw ModelError("Heisenberg J1-J2 requires a 2D lattice");
    int copies = spin_copies(m.spin);
    int lx = spec.extents[0], ly = spec.extents[1];
    Boundary bx = spec.boundary[0], by = spec.boundary[1];

    TermTable t;
    t.kind = ModelKind::Heisenberg;
    t.spin = m.spin;
    t.width = lx;
    t.height = ly;
    t.n_site = lx * ly;
    t.qubits_per_site = copies;
    t.n_system = t.n_site * copies;
    add_spin_bonds(t, bonds_2d(lx, ly, bx, by, 1, 0), m.j1, copies, 0);
    add_spin_bonds(t, bonds_2d(lx, ly, bx, by, 0, 1), m.j1, copies, 1);
    add_spin_bonds(t, bonds_2d(lx, ly, bx, by, 1, 1), m.j2, copies, 2);
    add_spin_bonds(t, bonds_2d(lx, ly, bx, by, 1, -1), m.j2, copies, 3);
    for (int p = 0; p < t.n_site; p++)
        for (int c = 0; c < copies; c++)
            t.coords.push_back({p % lx, p / lx, c});
    return t;
}

inline TermTable heisenberg_chain(const LatticeSpec& spec, const HeisenbergChain& m)
{
    if (m.j <= 0.0) throw ModelError("require j > 0");
    if (spec.extents.size() != 1) throw ModelError("chain model requires exactly one axis");
    int copies = spin_copies(m.spin);
    int n = spec.extents[0];
    TermTable t;
    t.kind = ModelKind::Chain;
    t.spin = m.spin;
    t.width = n;
    t.height = 1;
    t.n_site = n;
    t.qubits_per_site = copies;
    t.n_system = n * copies;
    add_spin_bonds(t, bonds_2d(n, 1, spec.boundary[0], Boundary::Open, 1, 0), m.j, copies, 0);
    for (int p = 0; p < n; p++)
        for (int c = 0; c < copies; c++)
            t.coords.push_back({p, 0, c});
    return t;
}

inline TermTable fermi_hubbard(const LatticeSpec& spec, const FermiHubbard& m)
{
    if (m.t <= 0.0 || m.u < 0.0) throw ModelError("require t > 0 and u >= 0");
    if (spec.extents.size() != 2) throw ModelError("Fermi-Hubbard requires a 2D lattice");
    int lx = spec.extents[0], ly = spec.extents[1];
    TermTable t;
    t.kind = ModelKind::FermiHubbard;
    t.width = lx;
    t.height = ly;
    t.n_site = lx * ly;
    t.qubits_per_site = 2;
    t.n_system = 2 * t.n_site;

    auto edges = bonds_2d(lx, ly, spec.boundary[0], spec.boundary[1], 1, 0);
    auto ey = bonds_2d(lx, ly, spec.boundary[0], spec.boundary[1], 0, 1);
    std::vector<int> edge_mu(edges.size(), 0);
    edges.insert(edges.end(), ey.begin(), ey.end());
    edge_mu.resize(edges.size(), 1);

    for (std::size_t e = 0; e < edges.size(); e++) {
        auto [a, b] = edges[e];
        for (int s = 0; s < 2; s++) {
            int q1 = 2 * a + s, q2 = 2 * b + s;
            if (q1 > q2) std::swap(q1, q2);
            for (Axis end : {Axis::X, Axis::Y}) {
                PauliTerm term;
                term.weight = m.t / 2.0;
                term.factors.push_back({q1, end});
                for (int q = q1 + 1; q < q2; q++) term.factors.push_back({q, Axis::Z});
                term.factors.push_back({q2, end});
                term.alpha = end == Axis::X ? 0 : 1;
                term.mu = edge_mu[e];
                t.terms.push_back(std::move(term));
            }
        }
    }
    if (m.u > 0.0) {
        for (int p = 0; p < t.n_site; p++) {
            PauliTerm term;
            term.weight = m.u / 4.0;
            term.factors = {{2 * p, Axis::Z}, {2 * p + 1, Axis::Z}};
            term.alpha = 2;
            term.mu = 2;
            t.terms.push_back(std::move(term));
        }
    }
    for (int p = 0; p < t.n_site; p++)
        for (int s = 0; s < 2; s++)
            t.coords.push_back({p % lx, p / lx, s});
    return t;
}

}  // namespace detail

inline TermTable enumerate_terms(const LatticeSpec& spec)
{
    detail::check_spec(spec);
    TermTable t = std::visit(
        [&](const auto& m) -> TermTable {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, HeisenbergJ1J2>)
                return detail::heisenberg_2d(spec, m);
            else if constexpr (std::is_same_v<M, FermiHubbard>)
                return detail::fermi_hubbard(spec, m);
            else
                return detail::heisenberg_chain(spec, m);
        },
        spec.model);
    detail::finalize(t);
    return t;
}

struct BoundaryRescale {
    double beta1_sq = 1.0;
    double lambda_eff = 0.0;
};

// Padding bins carry the mean term weight.
inline BoundaryRescale boundary_rescale(const TermTable& table, std::size_t enumerated_bins)
{
    if (table.count == 0 || table.lambda <= 0.0)
        throw ModelError("boundary_rescale requires a non-empty Hamiltonian");
    if (enumerated_bins < table.count)
        throw ModelError("enumerated_bins must be >= L");
    double mean = table.lambda / static_cast<double>(table.count);
    double encoded = table.lambda + mean * static_cast<double>(enumerated_bins - table.count);
    return {table.lambda / encoded, encoded};
}

// The PREPARE encodes `encoded` (e.g. the periodic version of an open lattice).
inline BoundaryRescale boundary_rescale(const TermTable& table, const TermTable& encoded)
{
    if (table.count == 0 || table.lambda <= 0.0)
        throw ModelError("boundary_rescale requires a non-empty Hamiltonian");
    if (encoded.count < table.count || encoded.lambda < table.lambda)
        throw ModelError("encoded table must contain the valid terms");
    double beta = table.lambda / encoded.lambda;
    return {beta, table.lambda / beta};
}

inline std::string model_name(const ModelParams& m)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using M = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<M, HeisenbergJ1J2>) return "heisenberg";
            else if constexpr (std::is_same_v<M, FermiHubbard>) return "fermi_hubbard";
            else return "chain";
        },
        m);
}

// `weight,qubit:axis;qubit:axis` rows.
inline void write_terms_csv(std::ostream& os, const TermTable& t)
{
    os << "weight,factors\n";
    os.precision(17);
    for (const auto& term : t.terms) {
        os << term.weight << ',';
        for (std::size_t i = 0; i < term.factors.size(); i++) {
            if (i) os << ';';
            os << term.factors[i].qubit << ':' << axis_char(term.factors[i].axis);
        }
        os << '\n';
    }
}

inline LatticeSpec square(int l, const ModelParams& m, bool cylinder = true)
{
    return {{l, l}, {cylinder ? Boundary::Periodic : Boundary::Open, Boundary::Open}, m};
}

inline LatticeSpec chain(int n, const ModelParams& m, Boundary b = Boundary::Periodic)
{
    return {{n}, {b}, m};
}

}  // namespace ftx

#endif  // FTX_LATTICE_HPP
