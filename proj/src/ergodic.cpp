#include "slapmap/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace slapmap {

namespace {
constexpr double kEdgeThreshold = 1e-14;  // roundoff transitions are dropped
}

double UlamModel::row_sum(int i) const {
    double s = 0.0;
    for (auto [j, w] : rows[static_cast<std::size_t>(i)]) s += w;
    return s;
}

UlamModel build_ulam(const PiecewiseAffineMap& f, int n) {
    if (!f.expanding()) throw NotExpanding("Ulam model requires an expanding map");
    if (n < 10) throw Error("build_ulam: need n >= 10");
    const double lo = f.domain_lo(), hi = f.domain_hi(), len = hi - lo;

    struct Seed {
        double x;
        double err;  // roundoff bound; 0 for analytically exact values
    };
    std::vector<Seed> seeds;
    for (int i = 0; i <= n; ++i) seeds.push_back({lo + len * i / n, 0.0});
    for (const auto& b : f.branches()) seeds.push_back({b.lo, 0.0});
    seeds.push_back({hi, 0.0});
    // Acip support boundaries of a piecewise affine expanding map lie on the
    // forward orbit of its breakpoints; seeding the grid with those orbits
    // aligns cyclic parts with cell edges at moderate n. The orbit roundoff
    // grows with the accumulated expansion; each point carries its bound so
    // copies of one analytic value reached along different compositions can
    // be recognized below, and the orbit stops once the bound reaches a
    // fraction of a cell.
    for (const auto& b : f.branches()) {
        for (Side s : {Side::left, Side::right}) {
            double x = s == Side::left ? b.hi : b.lo;
            Side side = s;
            double amp = 1.0;
            for (int k = 0; k < 64; ++k) {
                if (x < lo || x > hi) break;
                double err = amp * 1e-15 * len;
                if (err > 0.25 * len / n) break;
                if (x > lo && x < hi) seeds.push_back({x, err});
                int bi;
                try {
                    bi = f.branch_index(x, side);
                } catch (const Error&) {
                    break;
                }
                const AffineBranch& br = f.branches()[static_cast<std::size_t>(bi)];
                amp *= std::abs(br.slope);
                x = br.at(x);
                if (br.slope < 0) side = flip(side);
            }
        }
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const Seed& a, const Seed& b) { return a.x < b.x; });
    const double merge = len / n * 1e-9;
    std::vector<Seed> kept;
    for (const Seed& e : seeds) {
        if (!kept.empty() && e.x - kept.back().x <= merge + e.err + kept.back().err) {
            // same analytic point; keep the most precise representative
            if (e.err < kept.back().err) kept.back() = e;
            continue;
        }
        kept.push_back(e);
    }
    std::vector<double> edges;
    edges.reserve(kept.size());
    for (const Seed& e : kept) edges.push_back(e.x);
    edges.front() = lo;
    edges.back() = hi;

    UlamModel M;
    M.domain_lo = lo;
    M.domain_hi = hi;
    M.edges = edges;
    const int cells = static_cast<int>(edges.size()) - 1;
    M.rows.resize(static_cast<std::size_t>(cells));

    for (int i = 0; i < cells; ++i) {
        double clo = edges[static_cast<std::size_t>(i)];
        double chi = edges[static_cast<std::size_t>(i) + 1];
        double mid = 0.5 * (clo + chi);
        const AffineBranch& b =
            f.branches()[static_cast<std::size_t>(f.branch_index(mid, Side::right))];
        double ylo = b.slope >= 0 ? b.at(clo) : b.at(chi);
        double yhi = b.slope >= 0 ? b.at(chi) : b.at(clo);
        ylo = std::max(ylo, lo);
        yhi = std::min(yhi, hi);
        double ylen = yhi - ylo;
        if (ylen <= 0) continue;
        // cells overlapping the image interval
        auto it = std::upper_bound(edges.begin(), edges.end(), ylo);
        int j = static_cast<int>(it - edges.begin()) - 1;
        j = std::clamp(j, 0, cells - 1);
        auto& row = M.rows[static_cast<std::size_t>(i)];
        while (j < cells && edges[static_cast<std::size_t>(j)] < yhi) {
            double olo = std::max(ylo, edges[static_cast<std::size_t>(j)]);
            double ohi = std::min(yhi, edges[static_cast<std::size_t>(j) + 1]);
            // overlap slivers below the grid merge scale are roundoff from
            // image endpoints meant to coincide with cell edges; keeping them
            // would leak spurious transitions across part boundaries
            if (ohi - olo > merge) row.push_back({j, (ohi - olo) / ylen});
            ++j;
        }
        // compensate accumulated roundoff so the row is stochastic
        double s = 0.0;
        for (auto& [_, w] : row) s += w;
        if (s > 0)
            for (auto& [_, w] : row) w /= s;
    }
    return M;
}

namespace {

// iterative Tarjan over the thresholded digraph
std::vector<int> scc_assignment(const UlamModel& M, int* count_out) {
    const int n = M.cells();
    std::vector<int> index(static_cast<std::size_t>(n), -1),
        low(static_cast<std::size_t>(n), 0), comp(static_cast<std::size_t>(n), -1);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    int next_index = 0, comp_count = 0;

    struct Frame {
        int v;
        std::size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] =
            next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;
        while (!call.empty()) {
            Frame& fr = call.back();
            const auto& row = M.rows[static_cast<std::size_t>(fr.v)];
            bool descended = false;
            while (fr.edge < row.size()) {
                auto [w, wt] = row[fr.edge++];
                if (wt < kEdgeThreshold) continue;
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] =
                        next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[static_cast<std::size_t>(w)])
                    low[static_cast<std::size_t>(fr.v)] =
                        std::min(low[static_cast<std::size_t>(fr.v)],
                                 index[static_cast<std::size_t>(w)]);
            }
            if (descended) continue;
            if (low[static_cast<std::size_t>(fr.v)] == index[static_cast<std::size_t>(fr.v)]) {
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = false;
                    comp[static_cast<std::size_t>(w)] = comp_count;
                    if (w == fr.v) break;
                }
                ++comp_count;
            }
            int v = fr.v;
            call.pop_back();
            if (!call.empty())
                low[static_cast<std::size_t>(call.back().v)] =
                    std::min(low[static_cast<std::size_t>(call.back().v)],
                             low[static_cast<std::size_t>(v)]);
        }
    }
    *count_out = comp_count;
    return comp;
}

}  // namespace

std::vector<std::vector<int>> terminal_classes(const UlamModel& M) {
    int comp_count = 0;
    std::vector<int> comp = scc_assignment(M, &comp_count);
    std::vector<bool> terminal(static_cast<std::size_t>(comp_count), true);
    for (int v = 0; v < M.cells(); ++v) {
        for (auto [w, wt] : M.rows[static_cast<std::size_t>(v)]) {
            if (wt < kEdgeThreshold) continue;
            if (comp[static_cast<std::size_t>(w)] != comp[static_cast<std::size_t>(v)])
                terminal[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] = false;
        }
    }
    std::vector<std::vector<int>> classes(static_cast<std::size_t>(comp_count));
    for (int v = 0; v < M.cells(); ++v)
        if (terminal[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])])
            classes[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& c : classes)
        if (!c.empty()) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

ClassPeriod class_period(const UlamModel& M, const std::vector<int>& cls) {
    std::vector<int> level(static_cast<std::size_t>(M.cells()), -1);
    std::vector<bool> in_class(static_cast<std::size_t>(M.cells()), false);
    for (int c : cls) in_class[static_cast<std::size_t>(c)] = true;

    std::vector<int> queue{cls.front()};
    level[static_cast<std::size_t>(cls.front())] = 0;
    int g = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (auto [w, wt] : M.rows[static_cast<std::size_t>(v)]) {
            if (wt < kEdgeThreshold || !in_class[static_cast<std::size_t>(w)]) continue;
            if (level[static_cast<std::size_t>(w)] == -1) {
                level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            } else {
                int diff = level[static_cast<std::size_t>(v)] + 1 -
                           level[static_cast<std::size_t>(w)];
                g = std::gcd(g, std::abs(diff));
            }
        }
    }
    ClassPeriod result;
    result.period = g == 0 ? 1 : g;
    result.cyclic_parts.assign(static_cast<std::size_t>(result.period), {});
    for (int c : cls) {
        int r = ((level[static_cast<std::size_t>(c)] % result.period) + result.period) %
                result.period;
        result.cyclic_parts[static_cast<std::size_t>(r)].push_back(c);
    }
    return result;
}

DensityResult stationary_density(const UlamModel& M, const std::vector<int>& cls,
                                 int period, long max_iter, double tol,
                                 bool allow_unconverged) {
    const int n = static_cast<int>(cls.size());
    std::vector<int> local(static_cast<std::size_t>(M.cells()), -1);
    for (int i = 0; i < n; ++i) local[static_cast<std::size_t>(cls[static_cast<std::size_t>(i)])] = i;

    // restricted transition structure, rows renormalized inside the class
    std::vector<std::vector<std::pair<int, double>>> rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (auto [j, w] : M.rows[static_cast<std::size_t>(cls[static_cast<std::size_t>(i)])])
            if (local[static_cast<std::size_t>(j)] >= 0) {
                rows[static_cast<std::size_t>(i)].push_back(
                    {local[static_cast<std::size_t>(j)], w});
                s += w;
            }
        for (auto& [_, w] : rows[static_cast<std::size_t>(i)]) w /= s;
    }

    auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (int i = 0; i < n; ++i)
            for (auto [j, w] : rows[static_cast<std::size_t>(i)])
                out[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(i)] * w;
    };

    DensityResult result;
    std::vector<double> v(static_cast<std::size_t>(n), 1.0 / n), step(v), tmp(v),
        avg(static_cast<std::size_t>(n));
    long iter = 0;
    double diff = 0.0;
    while (iter < max_iter) {
        // period-averaged operator: mean of v M^1 .. v M^period
        std::fill(avg.begin(), avg.end(), 0.0);
        step = v;
        for (int p = 0; p < period; ++p) {
            apply(step, tmp);
            std::swap(step, tmp);
            for (int i = 0; i < n; ++i)
                avg[static_cast<std::size_t>(i)] += step[static_cast<std::size_t>(i)] / period;
        }
        diff = 0.0;
        for (int i = 0; i < n; ++i)
            diff += std::abs(avg[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]);
        diff *= 0.5;
        v = avg;
        iter += period;
        if (diff < tol) break;
    }
    result.mass = std::move(v);
    result.iterations = iter;
    result.residual = diff;
    result.converged = diff < tol;
    double total = std::accumulate(result.mass.begin(), result.mass.end(), 0.0);
    for (auto& m : result.mass) m /= total;
    if (!result.converged && !allow_unconverged)
        throw NoConvergence("power iteration cap reached", diff);
    return result;
}

namespace {

std::vector<std::pair<double, double>> merged_support(const UlamModel& M,
                                                      const std::vector<int>& cls) {
    std::vector<std::pair<double, double>> out;
    for (int c : cls) {
        double lo = M.cell_lo(c), hi = M.cell_hi(c);
        if (!out.empty() && std::abs(out.back().second - lo) < 1e-12 * (M.domain_hi - M.domain_lo))
            out.back().second = hi;
        else
            out.push_back({lo, hi});
    }
    return out;
}

std::vector<int> sorted_periods(const ErgodicReport& r) {
    std::vector<int> p;
    for (const auto& c : r.components) p.push_back(c.period);
    std::sort(p.begin(), p.end());
    return p;
}

}  // namespace

ErgodicReport analyze(const PiecewiseAffineMap& f, int n, const AnalyzeOptions& opts) {
    auto run = [&](int bins, bool densities) {
        UlamModel M = build_ulam(f, bins);
        ErgodicReport rep;
        rep.bin_count = M.cells();
        rep.map_digest = f.digest();
        rep.edges = M.edges;
        for (const auto& cls : terminal_classes(M)) {
            ErgodicComponent comp;
            comp.cells = cls;
            comp.support = merged_support(M, cls);
            ClassPeriod cp = class_period(M, cls);
            comp.period = cp.period;
            comp.cyclic_parts = std::move(cp.cyclic_parts);
            if (densities) {
                DensityResult dr = stationary_density(M, cls, comp.period,
                                                      opts.power_max_iter, opts.power_tol,
                                                      /*allow_unconverged=*/true);
                comp.density = std::move(dr.mass);
                comp.density_converged = dr.converged;
                comp.density_residual = dr.residual;
            }
            rep.components.push_back(std::move(comp));
        }
        return rep;
    };

    ErgodicReport rep = run(n, opts.compute_density);
    if (opts.refinement_check) {
        ErgodicReport fine = run(2 * n, false);
        if (fine.components.size() != rep.components.size() ||
            sorted_periods(fine) != sorted_periods(rep)) {
            rep.refinement_stable = false;
            rep.refinement_note = "Unresolved: component count or periods changed at 2n bins";
        }
    }
    return rep;
}

double support_fraction(const UlamModel& M, const std::vector<int>& cls) {
    return static_cast<double>(cls.size()) / M.cells();
}

std::string report_to_json(const ErgodicReport& r) {
    nlohmann::json j;
    j["bin_count"] = r.bin_count;
    j["map_digest"] = r.map_digest;
    j["refinement_stable"] = r.refinement_stable;
    if (!r.refinement_note.empty()) j["refinement_note"] = r.refinement_note;
    j["components"] = nlohmann::json::array();
    for (const auto& c : r.components) {
        nlohmann::json jc;
        jc["support"] = nlohmann::json::array();
        for (auto [lo, hi] : c.support) jc["support"].push_back({lo, hi});
        jc["period"] = c.period;
        jc["cells"] = static_cast<int>(c.cells.size());
        if (!c.density.empty()) {
            jc["density_converged"] = c.density_converged;
            jc["density_residual"] = c.density_residual;
        }
        j["components"].push_back(std::move(jc));
    }
    return j.dump(2);
}

std::string density_csv(const ErgodicReport& r, const ErgodicComponent& c) {
    std::ostringstream out;
    out.precision(17);
    out << "bin_lo,bin_hi,density\n";
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
        std::size_t cell = static_cast<std::size_t>(c.cells[i]);
        double lo = r.edges[cell], hi = r.edges[cell + 1];
        out << lo << "," << hi << "," << c.density[i] / (hi - lo) << "\n";
    }
    return out.str();
}

}  // namespace slapmap
