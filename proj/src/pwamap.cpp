#include "slapmap/pwamap.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include <json.hpp>

namespace slapmap {

PiecewiseAffineMap::PiecewiseAffineMap(double domain_lo, double domain_hi,
                                       std::vector<AffineBranch> branches)
    : lo_(domain_lo), hi_(domain_hi), branches_(std::move(branches)) {
    if (!(lo_ < hi_) || branches_.empty())
        throw Error("PiecewiseAffineMap: empty domain or no branches");
    std::sort(branches_.begin(), branches_.end(),
              [](const AffineBranch& a, const AffineBranch& b) { return a.lo < b.lo; });
    const double t = 1e-9 * (hi_ - lo_);
    if (std::abs(branches_.front().lo - lo_) > t ||
        std::abs(branches_.back().hi - hi_) > t)
        throw Error("PiecewiseAffineMap: branches do not cover the domain");
    for (std::size_t i = 0; i + 1 < branches_.size(); ++i) {
        if (std::abs(branches_[i].hi - branches_[i + 1].lo) > t)
            throw Error("PiecewiseAffineMap: branch intervals do not tile");
    }
    // snap shared endpoints so interval lookup is exact
    branches_.front().lo = lo_;
    branches_.back().hi = hi_;
    for (std::size_t i = 0; i + 1 < branches_.size(); ++i)
        branches_[i + 1].lo = branches_[i].hi;
    min_expansion_ = std::abs(branches_[0].slope);
    for (const auto& b : branches_)
        min_expansion_ = std::min(min_expansion_, std::abs(b.slope));
}

std::vector<double> PiecewiseAffineMap::breakpoints() const {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < branches_.size(); ++i)
        out.push_back(branches_[i].hi);
    return out;
}

int PiecewiseAffineMap::branch_index(double x, Side side) const {
    if (x < lo_ || x > hi_) throw OutOfDomain("eval: x outside domain");
    if (x == lo_ && side == Side::left)
        throw OutOfDomain("eval: left limit at domain lower endpoint");
    if (x == hi_ && side == Side::right)
        throw OutOfDomain("eval: right limit at domain upper endpoint");
    // first branch with hi >= x;   side left wants lo < x <= hi,
    // side right wants lo <= x < hi
    auto it = std::lower_bound(branches_.begin(), branches_.end(), x,
                               [](const AffineBranch& b, double v) { return b.hi < v; });
    if (it == branches_.end()) it = branches_.end() - 1;
    std::size_t i = static_cast<std::size_t>(it - branches_.begin());
    if (side == Side::right && x == branches_[i].hi && i + 1 < branches_.size()) ++i;
    if (side == Side::left && x == branches_[i].lo && i > 0) --i;
    return static_cast<int>(i);
}

double PiecewiseAffineMap::eval(double x, Side side) const {
    return branches_[static_cast<std::size_t>(branch_index(x, side))].at(x);
}

std::uint64_t PiecewiseAffineMap::digest() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(lo_);
    mix(hi_);
    for (const auto& b : branches_) {
        mix(b.lo);
        mix(b.hi);
        mix(b.slope);
        mix(b.intercept);
    }
    return h;
}

Orbit iterate(const PiecewiseAffineMap& f, double x, Side side, int n) {
    if (n < 1) throw Error("iterate: n must be >= 1");
    Orbit orbit;
    for (int k = 0; k < n; ++k) {
        int bi;
        try {
            bi = f.branch_index(x, side);
        } catch (const OutOfDomain&) {
            orbit.truncated = true;
            orbit.points.push_back({x, side, -1});
            return orbit;
        }
        const AffineBranch& b = f.branches()[static_cast<std::size_t>(bi)];
        orbit.points.push_back({x, side, bi});
        x = b.at(x);
        if (b.slope < 0) side = flip(side);
    }
    orbit.points.push_back({x, side, -1});
    return orbit;
}

AffineBranch compose_along(const PiecewiseAffineMap& f,
                           const std::vector<int>& itinerary) {
    if (itinerary.empty()) throw Error("compose_along: empty itinerary");
    const auto& branches = f.branches();
    const AffineBranch& first = branches.at(static_cast<std::size_t>(itinerary[0]));
    // current composed map g on [lo, hi]
    double lo = first.lo, hi = first.hi;
    double slope = 1.0, intercept = 0.0;  // identity; applied before branch k
    for (std::size_t k = 0; k < itinerary.size(); ++k) {
        const AffineBranch& b = branches.at(static_cast<std::size_t>(itinerary[k]));
        if (k > 0) {
            // shrink [lo,hi] so the composed image lands in b's interval
            double ylo = slope >= 0 ? slope * lo + intercept : slope * hi + intercept;
            double yhi = slope >= 0 ? slope * hi + intercept : slope * lo + intercept;
            double clo = std::max(ylo, b.lo);
            double chi = std::min(yhi, b.hi);
            if (!(clo < chi))
                throw EmptyDomain("compose_along: itinerary has empty domain at step " +
                                  std::to_string(k));
            double plo = (clo - intercept) / slope;
            double phi = (chi - intercept) / slope;
            lo = std::min(plo, phi);
            hi = std::max(plo, phi);
        }
        intercept = b.slope * intercept + b.intercept;
        slope = b.slope * slope;
    }
    return AffineBranch{lo, hi, slope, intercept};
}

PiecewiseAffineMap compose(const PiecewiseAffineMap& g,
                           const PiecewiseAffineMap& f) {
    const double snap = 1e-13 * f.domain_length();
    std::vector<double> gb = g.breakpoints();
    std::vector<AffineBranch> out;
    for (const AffineBranch& b : f.branches()) {
        double ylo = b.image_lo(), yhi = b.image_hi();
        // cut points of b where the image crosses a breakpoint of g
        std::vector<double> cuts{b.lo, b.hi};
        for (double c : gb) {
            if (c > ylo + snap && c < yhi - snap)
                cuts.push_back(b.inverse_at(c));
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double xlo = cuts[i], xhi = cuts[i + 1];
            if (xhi - xlo <= snap) continue;
            double xmid = 0.5 * (xlo + xhi);
            double ymid = b.at(xmid);
            ymid = std::clamp(ymid, g.domain_lo(), g.domain_hi());
            const AffineBranch& gb2 =
                g.branches()[static_cast<std::size_t>(g.branch_index(ymid, Side::right))];
            out.push_back(AffineBranch{xlo, xhi, gb2.slope * b.slope,
                                       gb2.slope * b.intercept + gb2.intercept});
        }
    }
    return PiecewiseAffineMap(f.domain_lo(), f.domain_hi(), std::move(out));
}

PiecewiseAffineMap map_power(const PiecewiseAffineMap& f, int n) {
    if (n < 1) throw Error("map_power: n must be >= 1");
    // binary powering keeps the intermediate branch counts small
    PiecewiseAffineMap result = f;
    PiecewiseAffineMap base = f;
    --n;
    while (n > 0) {
        if (n & 1) result = compose(base, result);
        n >>= 1;
        if (n > 0) base = compose(base, base);
    }
    return result;
}

PiecewiseAffineMap restrict_and_rescale(const PiecewiseAffineMap& f,
                                        double lo, double hi) {
    if (!(f.domain_lo() - f.tol() <= lo && hi <= f.domain_hi() + f.tol() && lo < hi))
        throw OutOfDomain("restrict_and_rescale: bad interval");
    const double w = hi - lo;
    const double snap = 1e-13 * w;
    std::vector<AffineBranch> out;
    for (const AffineBranch& b : f.branches()) {
        double blo = std::max(b.lo, lo), bhi = std::min(b.hi, hi);
        if (bhi - blo <= snap) continue;
        if (b.image_lo() < lo - f.tol() || b.image_hi() > hi + f.tol()) {
            // only the clipped part must stay inside
            double ilo = b.slope >= 0 ? b.at(blo) : b.at(bhi);
            double ihi = b.slope >= 0 ? b.at(bhi) : b.at(blo);
            if (ilo < lo - f.tol() || ihi > hi + f.tol())
                throw NotInvariant("restrict_and_rescale: interval not invariant");
        }
        // y = (x - lo)/w conjugation; slope is preserved
        double nlo = (blo - lo) / w;
        double nhi = (bhi - lo) / w;
        double nintercept = (b.slope * lo + b.intercept - lo) / w;
        out.push_back(AffineBranch{nlo, nhi, b.slope, nintercept});
    }
    if (out.empty()) throw NotInvariant("restrict_and_rescale: empty restriction");
    out.front().lo = 0.0;
    out.back().hi = 1.0;
    return PiecewiseAffineMap(0.0, 1.0, std::move(out));
}

bool is_lorenz(const PiecewiseAffineMap& f) {
    const double tol = 1e-10;
    if (std::abs(f.domain_lo()) > tol || std::abs(f.domain_hi() - 1.0) > tol)
        return false;
    for (const auto& b : f.branches())
        if (b.slope <= 0) return false;
    int discontinuities = 0;
    bool shape_ok = true;
    const auto& br = f.branches();
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        double left = br[i].at(br[i].hi);
        double right = br[i + 1].at(br[i + 1].lo);
        if (std::abs(left - right) <= tol) continue;  // continuous junction
        ++discontinuities;
        if (std::abs(left - 1.0) > tol || std::abs(right) > tol) shape_ok = false;
        double c = br[i].hi;
        if (!(c > tol && c < 1.0 - tol)) shape_ok = false;
    }
    return discontinuities == 1 && shape_ok;
}

std::string map_to_json(const PiecewiseAffineMap& f) {
    nlohmann::json j;
    j["domain"] = {f.domain_lo(), f.domain_hi()};
    j["branches"] = nlohmann::json::array();
    for (const auto& b : f.branches())
        j["branches"].push_back({{"lo", b.lo},
                                 {"hi", b.hi},
                                 {"slope", b.slope},
                                 {"intercept", b.intercept}});
    return j.dump(2);
}

PiecewiseAffineMap map_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<AffineBranch> branches;
    for (const auto& jb : j.at("branches"))
        branches.push_back(AffineBranch{jb.at("lo"), jb.at("hi"), jb.at("slope"),
                                        jb.at("intercept")});
    return PiecewiseAffineMap(j.at("domain")[0], j.at("domain")[1], std::move(branches));
}

std::string sample_csv(const PiecewiseAffineMap& f, int samples) {
    std::ostringstream out;
    out.precision(17);
    out << "x,f_left,f_right\n";
    for (int i = 0; i <= samples; ++i) {
        double x = f.domain_lo() + f.domain_length() * i / samples;
        double l = x == f.domain_lo() ? f.eval(x, Side::right) : f.eval(x, Side::left);
        double r = x == f.domain_hi() ? f.eval(x, Side::left) : f.eval(x, Side::right);
        out << x << "," << l << "," << r << "\n";
    }
    return out.str();
}

}  // namespace slapmap
