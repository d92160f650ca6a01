#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slapmap/pwamap.hpp"

namespace slapmap {

// Exact Ulam discretization: row-stochastic bin-transition structure of a
// piecewise-affine expanding map. Cell boundaries contain every branch
// endpoint, so each cell lies inside a single branch.
struct UlamModel {
    double domain_lo = 0.0;
    double domain_hi = 0.0;
    std::vector<double> edges;  // cell boundaries, size cells+1
    std::vector<std::vector<std::pair<int, double>>> rows;  // sparse, row-stochastic

    int cells() const { return static_cast<int>(rows.size()); }
    double cell_lo(int i) const { return edges[static_cast<std::size_t>(i)]; }
    double cell_hi(int i) const { return edges[static_cast<std::size_t>(i) + 1]; }
    double row_sum(int i) const;
};

UlamModel build_ulam(const PiecewiseAffineMap& f, int n);

// Terminal strongly connected components of the positive-transition digraph
// (edges with weight >= 1e-14): the candidate acip supports, each sorted,
// ordered by smallest cell index.
std::vector<std::vector<int>> terminal_classes(const UlamModel& M);

struct ClassPeriod {
    int period = 1;
    std::vector<std::vector<int>> cyclic_parts;  // permuted in order by the map
};

ClassPeriod class_period(const UlamModel& M, const std::vector<int>& cls);

struct DensityResult {
    std::vector<double> mass;  // per class cell, sums to 1
    bool converged = true;
    double residual = 0.0;
    long iterations = 0;
};

// Left fixed vector of the restricted transition structure by power iteration
// on the period-averaged operator. Throws NoConvergence at the cap unless
// allow_unconverged.
DensityResult stationary_density(const UlamModel& M, const std::vector<int>& cls,
                                 int period, long max_iter = 1000000,
                                 double tol = 1e-12, bool allow_unconverged = false);

struct ErgodicComponent {
    std::vector<int> cells;
    std::vector<std::pair<double, double>> support;  // merged cell intervals
    int period = 1;
    std::vector<std::vector<int>> cyclic_parts;
    std::vector<double> density;  // per cell mass, sums to 1 (empty if skipped)
    bool density_converged = true;
    double density_residual = 0.0;
};

struct ErgodicReport {
    int bin_count = 0;
    std::uint64_t map_digest = 0;
    std::vector<double> edges;  // the cell grid the analysis ran on
    std::vector<ErgodicComponent> components;
    bool refinement_stable = true;  // count and periods unchanged at 2n bins
    std::string refinement_note;
};

struct AnalyzeOptions {
    bool compute_density = true;
    bool refinement_check = true;
    long power_max_iter = 1000000;
    double power_tol = 1e-12;
};

ErgodicReport analyze(const PiecewiseAffineMap& f, int n,
                      const AnalyzeOptions& opts = {});

// fraction of cells covered by the union of component supports
double support_fraction(const UlamModel& M, const std::vector<int>& cls);

std::string report_to_json(const ErgodicReport& r);
std::string density_csv(const ErgodicReport& r, const ErgodicComponent& c);

}  // namespace slapmap
