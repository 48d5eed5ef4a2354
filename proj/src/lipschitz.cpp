#include "biholo/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace biholo {
namespace {

constexpr double kPi = 3.14159265358979323846;

cplx unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

// One uniform interior point; rejection sampling in a bounding box.
Point draw_interior(const ModelDomain& d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int tries = 0; tries < 10000; ++tries) {
        Point p;
        switch (d.kind()) {
        case DomainKind::disk:
        case DomainKind::annulus:
            p = Point{cplx{u(rng), u(rng)}};
            break;
        case DomainKind::bidisc:
        case DomainKind::ball:
        case DomainKind::ellipsoid:
            p = Point{cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)}};
            break;
        case DomainKind::siegel: {
            // bounded window of the unbounded model
            cplx w2{u(rng), u(rng)};
            double x = std::norm(w2) + 2.0 * u01(rng);
            double y = 2.0 * u(rng);
            p = Point{cplx{x, y}, w2};
            break;
        }
        }
        if (d.contains(p)) return p;
    }
    throw construction_error("interior sampling failed to hit the domain");
}

// Fixed boundary directions: K points on the relevant boundary piece.
struct LadderAnchor {
    Point boundary;  // point on (or proxy for) the boundary
    Point inward;    // unit inward real direction
};

std::vector<LadderAnchor> ladder_anchors(const ModelDomain& d, int k_angles,
                                         std::mt19937_64& rng) {
    std::vector<LadderAnchor> out;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < k_angles; ++k) {
        double th = 2.0 * kPi * k / k_angles;
        cplx e = unit(th);
        switch (d.kind()) {
        case DomainKind::disk:
            out.push_back({Point{e}, Point{-e}});
            break;
        case DomainKind::annulus: {
            if (k % 2 == 0)
                out.push_back({Point{e}, Point{-e}});
            else
                out.push_back({Point{d.annulus_r() * e}, Point{e}});
            break;
        }
        case DomainKind::bidisc: {
            // approach a distinguished-boundary-adjacent face point
            cplx other = 0.3 * unit(3.0 * th + 0.5);
            if (k % 2 == 0)
                out.push_back({Point{e, other}, Point{-e, cplx{0, 0}}});
            else
                out.push_back({Point{other, e}, Point{cplx{0, 0}, -e}});
            break;
        }
        case DomainKind::ball: {
            cplx a{u(rng), u(rng)}, b{u(rng), u(rng)};
            double n = std::sqrt(std::norm(a) + std::norm(b));
            if (n < 1e-9) { a = 1.0; b = 0.0; n = 1.0; }
            Point dir{a / n, b / n};
            out.push_back({dir, Point{-dir[0], -dir[1]}});
            break;
        }
        case DomainKind::ellipsoid: {
            cplx a{u(rng), u(rng)}, b{u(rng), u(rng)};
            double n = std::sqrt(std::norm(a) + std::norm(b));
            if (n < 1e-9) { a = 1.0; b = 0.0; n = 1.0; }
            Point dir{a / n, b / n};
            // radial scale t with rho(t*dir) = 0, bisection on t in (0, 2)
            double lo = 0.0, hi = 2.0;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                (d.rho(Point{mid * dir[0], mid * dir[1]}) < 0.0 ? lo : hi) = mid;
            }
            double t = 0.5 * (lo + hi);
            out.push_back({Point{t * dir[0], t * dir[1]}, Point{-t * dir[0], -t * dir[1]}});
            break;
        }
        case DomainKind::siegel: {
            cplx w2 = 0.8 * e;
            out.push_back({Point{cplx{std::norm(w2), 0.0}, w2}, Point{cplx{1, 0}, cplx{0, 0}}});
            break;
        }
        }
    }
    return out;
}

}  // namespace

std::vector<Point> PairSampler::interior_points(const ModelDomain& d, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point> pts;
    pts.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(draw_interior(d, rng));
    return pts;
}

PairSampler::PairSampler(ModelDomain domain, int pair_count, std::uint64_t seed,
                         double min_separation)
    : domain_(std::move(domain)), seed_(seed) {
    if (pair_count <= 0) throw usage_error("pair_count must be positive");
    std::mt19937_64 rng(seed);

    int n_ladder = pair_count / 2;
    int n_uniform = pair_count - n_ladder;

    // Boundary ladder: fixed directions, geometric depths down to 1e-9.
    const int k_angles = 32;
    auto anchors = ladder_anchors(domain_, k_angles, rng);
    std::vector<double> depths;
    for (double dpt = 0.5; dpt > 1e-9; dpt *= 0.5) depths.push_back(dpt);
    size_t idx = 0;
    while (static_cast<int>(pairs_.size()) < n_ladder) {
        const LadderAnchor& a = anchors[idx % anchors.size()];
        double dpt = depths[(idx / anchors.size()) % depths.size()];
        idx++;
        Point p = a.boundary + dpt * a.inward;
        Point q = a.boundary + (2.0 * dpt) * a.inward;
        if (!domain_.contains(p) || !domain_.contains(q)) continue;
        if (dist(p, q) < min_separation) continue;
        pairs_.emplace_back(p, q);
    }

    for (int i = 0; i < n_uniform; ++i) {
        Point p = draw_interior(domain_, rng);
        Point q = draw_interior(domain_, rng);
        if (dist(p, q) < min_separation) { --i; continue; }
        pairs_.emplace_back(p, q);
    }
}

LipschitzEstimate lipschitz_norm(const HoloFunc& f, const PairSampler& sampler) {
    LipschitzEstimate est{0.0, sampler.pairs().front(), sampler.pair_count()};
    for (const auto& [p, q] : sampler.pairs()) {
        double quot = std::abs(f(p) - f(q)) / dist(p, q);
        if (quot > est.norm) {
            est.norm = quot;
            est.max_pair = {p, q};
        }
    }
    return est;
}

CompactExhaustion::CompactExhaustion(ModelDomain domain, int levels, double delta0,
                                     int master_points, std::uint64_t seed)
    : domain_(std::move(domain)) {
    if (levels <= 0) throw usage_error("levels must be positive");
    auto master = PairSampler::interior_points(domain_, master_points, seed);
    for (int k = 0; k < levels; ++k) {
        double delta = delta0 * std::pow(2.0, -k);
        clearances_.push_back(delta);
        std::vector<Point> grid;
        for (const Point& p : master)
            if (domain_.boundary_distance(p) >= delta) grid.push_back(p);
        if (grid.empty())
            throw construction_error("exhaustion level has no grid points; raise master_points");
        grids_.push_back(std::move(grid));
    }
}

std::string verdict_name(FamilyVerdict v) {
    switch (v) {
    case FamilyVerdict::noncompact: return "noncompact";
    case FamilyVerdict::equicontinuous: return "equicontinuous";
    case FamilyVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

// Greedy cluster: seed at the closest pair of value vectors, grow while the
// diameter stays below tol.  Distance is the sup over grid points.
struct Cluster {
    int size = 0;
    double diameter = 0.0;
};

Cluster greedy_cluster(const std::vector<std::vector<cplx>>& values, double tol) {
    int n = static_cast<int>(values.size());
    if (n < 2) return {};
    auto supdist = [&](int i, int j) {
        double m = 0.0;
        for (size_t g = 0; g < values[static_cast<size_t>(i)].size(); ++g)
            m = std::max(m, std::abs(values[static_cast<size_t>(i)][g] -
                                     values[static_cast<size_t>(j)][g]));
        return m;
    };
    int bi = 0, bj = 1;
    double best = supdist(0, 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double dij = supdist(i, j);
            if (dij < best) { best = dij; bi = i; bj = j; }
        }
    if (best > tol) return {2, best};
    std::vector<int> members{bi, bj};
    double diam = best;
    std::vector<bool> used(static_cast<size_t>(n), false);
    used[static_cast<size_t>(bi)] = used[static_cast<size_t>(bj)] = true;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int c = 0; c < n; ++c) {
            if (used[static_cast<size_t>(c)]) continue;
            double worst = 0.0;
            for (int m : members) worst = std::max(worst, supdist(c, m));
            if (worst <= tol) {
                members.push_back(c);
                used[static_cast<size_t>(c)] = true;
                diam = std::max(diam, worst);
                grew = true;
            }
        }
    }
    return {static_cast<int>(members.size()), diam};
}

}  // namespace

FamilyEvidence family_classify(const HoloFunc& f, const std::vector<Automorphism>& phis,
                               const CompactExhaustion& exhaustion, const PairSampler& sampler,
                               double blowup_factor, double cluster_tol) {
    if (phis.empty()) throw usage_error("empty family");
    FamilyEvidence ev;
    ev.blowup_factor = blowup_factor;
    ev.budget = sampler.pair_count();

    for (const Automorphism& phi : phis) {
        auto comp = [&](const Point& z) { return f(phi.apply(z)); };
        auto est = lipschitz_norm(comp, sampler);
        ev.norms.push_back(est.norm);
        ev.max_pairs.push_back(est.max_pair);
    }

    double base = std::max(ev.norms.front(), 1e-300);
    size_t n = ev.norms.size();
    size_t tail_start = n - std::max<size_t>(1, n / 4);
    double tail_max = 0.0;
    for (size_t j = tail_start; j < n; ++j) tail_max = std::max(tail_max, ev.norms[j]);
    bool tail_blows = tail_max >= blowup_factor * base;
    if (tail_blows && n >= 2) {
        ev.verdict = FamilyVerdict::noncompact;
        ev.note = "tail norms exceed blowup_factor * first norm";
        return ev;
    }

    // Uniform bound on each exhaustion level: per-level difference quotients
    // must not blow up across the family.
    ev.uniform_bound_ok = true;
    for (int k = 0; k < exhaustion.levels() && ev.uniform_bound_ok; ++k) {
        const auto& grid = exhaustion.grid(k);
        std::vector<double> level_norms;
        for (const Automorphism& phi : phis) {
            double m = 0.0;
            for (size_t i = 0; i < grid.size(); ++i)
                for (size_t j = i + 1; j < grid.size(); ++j) {
                    double sep = dist(grid[i], grid[j]);
                    if (sep < 1e-12) continue;
                    m = std::max(m, std::abs(f(phi.apply(grid[i])) - f(phi.apply(grid[j]))) / sep);
                }
            level_norms.push_back(m);
        }
        std::vector<double> sorted = level_norms;
        std::sort(sorted.begin(), sorted.end());
        double median = sorted[sorted.size() / 2];
        double top = sorted.back();
        if (top > blowup_factor * std::max(median, 1e-300)) ev.uniform_bound_ok = false;
    }

    // Convergent-subsequence evidence on the finest grid.
    const auto& fine = exhaustion.grid(exhaustion.levels() - 1);
    std::vector<std::vector<cplx>> values;
    values.reserve(phis.size());
    for (const Automorphism& phi : phis) {
        std::vector<cplx> row;
        row.reserve(fine.size());
        for (const Point& z : fine) row.push_back(f(phi.apply(z)));
        values.push_back(std::move(row));
    }
    Cluster cl = greedy_cluster(values, cluster_tol);
    ev.cluster_size = cl.size;
    ev.cluster_diameter = cl.diameter;
    ev.subsequence_found = (cl.size >= 2 && cl.diameter <= cluster_tol);

    // A uniform quotient bound plus bounded grid values is the finite
    // Ascoli certificate: a convergent subsequence is then guaranteed even
    // when the sampled maps are too spread out to exhibit one directly.
    double value_sup = 0.0;
    for (const auto& row : values)
        for (const cplx& v : row) value_sup = std::max(value_sup, std::abs(v));
    bool values_bounded = value_sup < 1e6;

    if (ev.uniform_bound_ok && (ev.subsequence_found || values_bounded)) {
        ev.verdict = FamilyVerdict::equicontinuous;
        ev.note = ev.subsequence_found
                      ? "uniform level bounds and a value cluster within tolerance"
                      : "uniform level bounds with bounded values; subsequence "
                        "guaranteed but not exhibited at tolerance";
    } else {
        ev.verdict = FamilyVerdict::inconclusive;
        ev.note = ev.uniform_bound_ok ? "no convergent subsequence at tolerance"
                                      : "level quotients not uniformly bounded";
    }
    return ev;
}

LipschitzBoundReport lipschitz_hom_bound(
    const std::function<Point(const Point&)>& h, const ModelDomain& source,
    const ModelDomain& target, const std::vector<HoloFunc>& test_set, int pair_budget,
    std::uint64_t seed, const std::function<Point(const Point&)>* h_inverse) {
    // h maps target -> source; composition f o h lives on the target domain.
    PairSampler src_sampler(source, pair_budget, seed);
    PairSampler tgt_sampler(target, pair_budget, seed + 1);

    LipschitzBoundReport rep;
    double lip_h = 0.0;
    for (const auto& [p, q] : tgt_sampler.pairs())
        lip_h = std::max(lip_h, dist(h(p), h(q)) / dist(p, q));
    rep.lip_h = lip_h;

    const double slack = 1.05;  // sampled sups are lower bounds
    for (const HoloFunc& f : test_set) {
        double nf = lipschitz_norm(f, src_sampler).norm;
        auto fh = [&](const Point& w) { return f(h(w)); };
        double nfh = lipschitz_norm(fh, tgt_sampler).norm;
        LipschitzBoundRow row{nf, nfh, lip_h * nf, nfh <= slack * lip_h * nf};
        rep.all_hold = rep.all_hold && row.holds;
        rep.rows.push_back(row);
    }

    if (h_inverse) {
        double lip_inv = 0.0;
        for (const auto& [p, q] : src_sampler.pairs())
            lip_inv = std::max(lip_inv, dist((*h_inverse)(p), (*h_inverse)(q)) / dist(p, q));
        rep.lip_h_inverse = lip_inv;
        for (const HoloFunc& f : test_set) {
            auto fh = [&](const Point& w) { return f(h(w)); };
            double nfh = lipschitz_norm(fh, tgt_sampler).norm;
            double nf = lipschitz_norm(f, src_sampler).norm;
            LipschitzBoundRow row{nfh, nf, lip_inv * nfh, nf <= slack * lip_inv * nfh};
            rep.all_hold = rep.all_hold && row.holds;
            rep.reverse_rows.push_back(row);
        }
    }
    return rep;
}

}  // namespace biholo
