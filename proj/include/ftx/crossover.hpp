#ifndef FTX_CROSSOVER_HPP
#define FTX_CROSSOVER_HPP

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ftx {

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TracePoint {
    double elapsed_s = 0.0;
    double energy = 0.0;
    int bond_dim = 1;
    std::optional<double> trunc_error;
};

enum class FitKind { LinearExtrapolation, PowerLaw, Exponential };

inline const char* to_string(FitKind k)
{
    switch (k) {
    case FitKind::LinearExtrapolation: return "linear";
    case FitKind::PowerLaw: return "power_law";
    case FitKind::Exponential: return "exponential";
    }
    return "?";
}

// Linear: y = a + b x. Power law: y = a x^b. Exponential: y = a exp(b x).
struct FitResult {
    FitKind kind = FitKind::LinearExtrapolation;
    double a = 0.0;
    double b = 0.0;
    double residual = 0.0;  // RMS in fit space
    std::size_t n = 0;

    double operator()(double x) const
    {
        switch (kind) {
        case FitKind::LinearExtrapolation: return a + b * x;
        case FitKind::PowerLaw: return a * std::pow(x, b);
        case FitKind::Exponential: return a * std::exp(b * x);
        }
        return 0.0;
    }
};

// Fraction of classical runtime reachable with GPU or multi-node execution.
inline constexpr double classical_speedup_bound = 0.1;

namespace detail {

struct Line {
    double intercept = 0.0, slope = 0.0, rms = 0.0;
};

// Ordinary least squares; points are sorted first so the result does not depend on input order.
inline Line least_squares(std::vector<std::pair<double, double>> pts)
{
    if (pts.size() < 2) throw FitError("need at least two points");
    for (const auto& [x, y] : pts)
        if (!std::isfinite(x) || !std::isfinite(y)) throw FitError("non-finite input");
    std::sort(pts.begin(), pts.end());
    double n = static_cast<double>(pts.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (!(sxx > 0.0) || sxx <= 1e-300) throw FitError("degenerate abscissae");
    Line l;
    l.slope = sxy / sxx;
    l.intercept = my - l.slope * mx;
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
        double e = y - (l.intercept + l.slope * x);
        ss += e * e;
    }
    l.rms = std::sqrt(ss / n);
    return l;
}

inline double checked_log(double v, const char* what)
{
    if (!(v > 0.0)) throw FitError(std::string(what) + " must be positive");
    return std::log(v);
}

}  // namespace detail

// energy = E0 + slope * truncation error; E0 is the intercept.
inline FitResult extrapolate_ground_energy(const std::vector<std::pair<double, double>>& points)
{
    auto l = detail::least_squares(points);
    return {FitKind::LinearExtrapolation, l.intercept, l.slope, l.rms, points.size()};
}

inline FitResult fit_power_law(const std::vector<std::pair<double, double>>& xy)
{
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : xy) pts.emplace_back(detail::checked_log(x, "abscissa"), detail::checked_log(y, "value"));
    auto l = detail::least_squares(pts);
    return {FitKind::PowerLaw, std::exp(l.intercept), l.slope, l.rms, xy.size()};
}

inline FitResult fit_exponential(const std::vector<std::pair<double, double>>& xy)
{
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : xy) pts.emplace_back(x, detail::checked_log(y, "value"));
    auto l = detail::least_squares(pts);
    return {FitKind::Exponential, std::exp(l.intercept), l.slope, l.rms, xy.size()};
}

struct AccuracyFit {
    FitResult fit;        // power law of Delta E against elapsed time
    double seconds = 0.0;  // time at which the fit reaches the target
};

// Power-law fit of Delta E = E - e0 against time on the trace tail, inverted at `target`.
inline AccuracyFit fit_time_to_accuracy(const std::vector<TracePoint>& trace, double e0, double target,
                                        double tail_fraction = 0.5, bool allow_extrapolation = true)
{
    if (!(target > 0.0)) throw FitError("target accuracy must be positive");
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0) throw FitError("tail fraction must lie in (0, 1]");
    std::size_t above = 0;
    for (std::size_t i = 0; i < trace.size(); i++) {
        if (i > 0 && trace[i].elapsed_s < trace[i - 1].elapsed_s) throw FitError("elapsed time decreases");
        if (trace[i].bond_dim < 1) throw FitError("bond dimension must be >= 1");
        if (trace[i].energy > e0) above++;
    }
    if (above < 3) throw FitError("need at least three points above the reference energy");
    double t0 = trace.front().elapsed_s, t1 = trace.back().elapsed_s;
    double cut = t1 - tail_fraction * (t1 - t0);
    std::vector<TracePoint> tail;
    for (const auto& p : trace)
        if (p.elapsed_s >= cut) tail.push_back(p);
    if (tail.size() < 3) tail.assign(trace.end() - 3, trace.end());
    std::vector<std::pair<double, double>> xy;
    double smallest = INFINITY;
    for (const auto& p : tail) {
        double de = p.energy - e0;
        if (!(de > 0.0)) throw FitError("non-positive energy deviation in the fitted tail");
        if (!(p.elapsed_s > 0.0)) throw FitError("elapsed time must be positive in the fitted tail");
        xy.emplace_back(p.elapsed_s, de);
        smallest = std::min(smallest, de);
    }
    FitResult f = fit_power_law(xy);
    if (!(f.b < 0.0) || std::abs(f.b) < 1e-12) throw FitError("energy deviation does not decrease with time");
    if (!allow_extrapolation && target < smallest) throw FitError("target lies beyond the observed deviations");
    double t = std::pow(target / f.a, 1.0 / f.b);
    return {f, t};
}

enum class SizeScaling { Exponential, PowerLaw };

inline FitResult fit_size_scaling(const std::vector<double>& sizes, const std::vector<double>& times, SizeScaling form)
{
    if (sizes.size() != times.size()) throw FitError("sizes and times differ in length");
    if (sizes.size() < 3) throw FitError("need at least three sizes");
    std::vector<std::pair<double, double>> xy;
    for (std::size_t i = 0; i < sizes.size(); i++) xy.emplace_back(sizes[i], times[i]);
    return form == SizeScaling::Exponential ? fit_exponential(xy) : fit_power_law(xy);
}

struct CurveSample {
    double size = 0.0;
    double classical_s = 0.0;
    std::optional<double> quantum_s;
};

struct CrossoverReport {
    std::optional<double> crosspoint;  // empty: none in range
    std::vector<CurveSample> samples;
};

// Smallest quantum size whose runtime beats the fitted classical runtime scaled by `classical_scale`.
inline CrossoverReport find_crosspoint(const FitResult& classical, std::vector<std::pair<double, double>> quantum,
                                       const std::vector<double>& extra_sizes = {}, double classical_scale = 1.0)
{
    if (!(classical_scale > 0.0)) throw FitError("classical scale must be positive");
    std::sort(quantum.begin(), quantum.end());
    CrossoverReport rep;
    for (const auto& [s, q] : quantum) {
        if (!(q >= 0.0)) throw FitError("quantum runtime must be non-negative");
        if (!rep.crosspoint && q < classical_scale * classical(s)) rep.crosspoint = s;
    }
    std::vector<double> grid;
    for (const auto& [s, q] : quantum) grid.push_back(s);
    grid.insert(grid.end(), extra_sizes.begin(), extra_sizes.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (double s : grid) {
        CurveSample c;
        c.size = s;
        c.classical_s = classical_scale * classical(s);
        for (const auto& [qs, q] : quantum)
            if (qs == s) c.quantum_s = q;
        rep.samples.push_back(c);
    }
    return rep;
}

// CSV with header elapsed_s,energy,bond_dim[,trunc_error].
inline std::vector<TracePoint> read_trace_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) throw FitError("empty trace file");
    bool has_trunc = line.find("trunc_error") != std::string::npos;
    if (line.rfind("elapsed_s,energy,bond_dim", 0) != 0) throw FitError("unexpected trace header: " + line);
    std::vector<TracePoint> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 3 || (has_trunc && cells.size() < 4)) throw FitError("short trace row: " + line);
        TracePoint p;
        try {
            p.elapsed_s = std::stod(cells[0]);
            p.energy = std::stod(cells[1]);
            p.bond_dim = std::stoi(cells[2]);
            if (has_trunc) p.trunc_error = std::stod(cells[3]);
        } catch (const std::exception&) {
            throw FitError("malformed trace row: " + line);
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace ftx

#endif  // FTX_CROSSOVER_HPP
