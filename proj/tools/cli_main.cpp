// biholo command-line front end: one subcommand per library operation,
// key=value config files, deterministic JSON/CSV artifacts.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "biholo/bergman.hpp"
#include "biholo/holo_algebra.hpp"
#include "biholo/limits.hpp"
#include "biholo/lipschitz.hpp"
#include "biholo/report.hpp"
#include "biholo/scaling.hpp"
#include "biholo/series.hpp"

using namespace biholo;
using report::json;
using report::num;

namespace {

struct Opts {
    std::string domain = "disk";
    double r = 0.5;
    int m = 2;
    std::string mode = "closed";
    int degree = 20;
    int degree2 = -1;
    std::string z, zeta, v, x, c;
    std::string deltas;
    std::string aut;
    std::string series;
    std::string f = "id";
    std::string family;
    std::string direction = "to-siegel";
    int pairs = 100;
    int count = 12;
    int samples = 400;
    int grid = 64;
    std::uint64_t seed = 1;
    double tol = -1.0;  // negative = per-subcommand default
    std::string outdir;
};

ModelDomain parse_domain(const Opts& o) {
    if (o.domain == "disk") return ModelDomain::disk();
    if (o.domain == "annulus") return ModelDomain::annulus(o.r);
    if (o.domain == "bidisc") return ModelDomain::bidisc();
    if (o.domain == "ball") return ModelDomain::ball();
    if (o.domain == "ellipsoid") return ModelDomain::ellipsoid(o.m);
    if (o.domain == "siegel") return ModelDomain::siegel();
    throw usage_error("unknown domain kind: " + o.domain);
}

std::vector<double> parse_reals(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw usage_error(std::string("cannot parse ") + what + ": " + s);
        }
    }
    if (out.empty()) throw usage_error(std::string("empty ") + what);
    return out;
}

Point parse_point(const std::string& s, const char* what) {
    auto v = parse_reals(s, what);
    if (v.size() == 2) return Point(cplx{v[0], v[1]});
    if (v.size() == 4) return Point(cplx{v[0], v[1]}, cplx{v[2], v[3]});
    throw usage_error(std::string(what) + " must be re,im or re,im,re,im");
}

KernelModel make_kernel(const ModelDomain& d, const Opts& o) {
    if (o.mode == "closed") return KernelModel::closed_form(d);
    if (o.mode == "numeric") return build_numeric_kernel(d, o.degree, o.degree2);
    throw usage_error("mode must be closed or numeric");
}

HoloFunc make_func(const std::string& spec) {
    if (spec == "id") return [](const Point& z) { return z[0]; };
    if (spec == "coord2") return [](const Point& z) { return z[1]; };
    if (spec == "sq") return [](const Point& z) { return z[0] * z[0]; };
    if (spec == "cube") return [](const Point& z) { return z[0] * z[0] * z[0]; };
    if (spec == "geom") return [](const Point& z) { return 1.0 / (2.0 - z[0]); };
    if (spec == "invz") return [](const Point& z) { return 1.0 / z[0]; };
    throw usage_error("unknown function spec: " + spec);
}

std::vector<Automorphism> make_family(const ModelDomain& d, const std::string& spec, int count,
                                      std::uint64_t seed) {
    std::vector<Automorphism> fam;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979323846);
    for (int j = 1; j <= count; ++j) {
        if (spec == "mobius-geom")
            fam.push_back(Automorphism::disk_mobius(1.0 - std::pow(2.0, -j), 0.0));
        else if (spec == "mobius-inv")
            fam.push_back(Automorphism::disk_mobius(1.0 - 1.0 / j, 0.0));
        else if (spec == "mobius-converge")
            fam.push_back(Automorphism::disk_mobius(0.5 - std::pow(2.0, -j), 0.25));
        else if (spec == "alternating")
            fam.push_back(Automorphism::disk_mobius(j % 2 ? 0.5 : -0.5, 0.0));
        else if (spec == "rotation-inv")
            fam.push_back(d.kind() == DomainKind::disk
                              ? Automorphism::disk_mobius(cplx{0, 0}, 1.0 / j)
                              : Automorphism::annulus_rotation(d.annulus_r(), 1.0 / j));
        else if (spec == "rotation-geom")
            fam.push_back(d.kind() == DomainKind::disk
                              ? Automorphism::disk_mobius(cplx{0, 0}, std::pow(2.0, -j))
                              : Automorphism::annulus_rotation(d.annulus_r(), std::pow(2.0, -j)));
        else if (spec == "rotation-random")
            fam.push_back(d.kind() == DomainKind::disk
                              ? Automorphism::disk_mobius(cplx{0, 0}, u(rng))
                              : Automorphism::annulus_rotation(d.annulus_r(), u(rng)));
        else if (spec == "flip-converge")
            fam.push_back(Automorphism::annulus_flip(d.annulus_r(), 0.3 + std::pow(2.0, -j)));
        else if (spec == "ball-drift")
            fam.push_back(Automorphism::ball_aut(
                Point{cplx{1.0 - std::pow(2.0, -j), 0.0}, cplx{0.0, 0.0}},
                Mat2{{{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{1, 0}}}}));
        else
            throw usage_error("unknown family spec: " + spec);
    }
    return fam;
}

double tol_or(const Opts& o, double def) { return o.tol > 0.0 ? o.tol : def; }

json config_json(const std::string& sub, const Opts& o) {
    json c;
    c["subcommand"] = sub;
    c["domain"] = o.domain;
    if (o.domain == "annulus") c["r"] = num(o.r);
    if (o.domain == "ellipsoid") c["m"] = o.m;
    c["mode"] = o.mode;
    c["degree"] = o.degree;
    c["degree2"] = o.degree2;
    c["pairs"] = o.pairs;
    c["count"] = o.count;
    c["samples"] = o.samples;
    c["grid"] = o.grid;
    c["seed"] = o.seed;
    if (o.tol > 0.0) c["tol"] = num(o.tol);
    if (!o.z.empty()) c["z"] = o.z;
    if (!o.zeta.empty()) c["zeta"] = o.zeta;
    if (!o.v.empty()) c["v"] = o.v;
    if (!o.x.empty()) c["x"] = o.x;
    if (!o.c.empty()) c["c"] = o.c;
    if (!o.deltas.empty()) c["deltas"] = o.deltas;
    if (!o.aut.empty()) c["aut"] = o.aut;
    if (!o.series.empty()) c["series"] = o.series;
    if (!o.f.empty()) c["f"] = o.f;
    if (!o.family.empty()) c["family"] = o.family;
    c["direction"] = o.direction;
    return c;
}

void emit(const Opts& o, const std::string& sub, json& doc, const std::string& csv = "") {
    std::string dir = o.outdir;
    if (dir.empty()) {
        const char* env = std::getenv("BIHOLO_OUTDIR");
        dir = env ? env : "out";
    }
    std::string body = doc.dump(2) + "\n";
    report::write_atomic(dir + "/" + sub + ".json", body);
    if (!csv.empty()) report::write_atomic(dir + "/" + sub + ".csv", csv);
    std::cout << body;
}

json pair_json(const PointPair& p) {
    return json{{"p", report::point_json(p.first)}, {"q", report::point_json(p.second)}};
}

// ---- subcommands ----

int run_kernel(const Opts& o) {
    ModelDomain d = parse_domain(o);
    KernelModel K = make_kernel(d, o);
    Point z = parse_point(o.z, "--z");
    Point zeta = o.zeta.empty() ? z : parse_point(o.zeta, "--zeta");
    cplx val = K.eval(z, zeta);
    json doc;
    doc["config"] = config_json("kernel", o);
    doc["kernel"] = json::parse(K.descriptor());
    doc["value"] = report::complex_json(val);
    doc["tail_bound"] = num(K.tail_bound(z, zeta));
    if (K.numeric()) {
        doc["gram_condition"] = num(K.gram_condition());
        doc["norm2_ratio"] = num(K.norm2_ratio());
    }
    emit(o, "kernel", doc);
    return 0;
}

int run_curvature(const Opts& o) {
    ModelDomain d = parse_domain(o);
    KernelModel K = make_kernel(d, o);
    Point z = parse_point(o.z, "--z");
    Point v = o.v.empty() ? Point(cplx{1.0, 0.0}) : parse_point(o.v, "--v");
    if (d.dim() == 2 && v.dim() == 1) v = Point{v[0], cplx{0.0, 0.0}};
    auto cur = holo_curvature(K, z, v);
    auto met = bergman_metric(K, z);
    json doc;
    doc["config"] = config_json("curvature", o);
    doc["curvature"] = num(cur.value);
    doc["stencil_radius"] = num(cur.radius);
    doc["metric_length2"] = num(metric_length2(met, v));
    emit(o, "curvature", doc);
    return 0;
}

int run_transform_law(const Opts& o) {
    ModelDomain d = parse_domain(o);
    KernelModel K = make_kernel(d, o);
    if (o.aut.empty()) throw usage_error("transform-law needs --aut");
    Automorphism F = Automorphism::from_descriptor(o.aut);
    if (!(F.domain() == d)) throw usage_error("automorphism domain does not match --domain");
    PairSampler sampler(d, o.pairs, o.seed);
    auto res = transformation_residual(K, F, sampler.pairs());
    json doc;
    doc["config"] = config_json("transform-law", o);
    doc["aut"] = json::parse(F.descriptor());
    doc["max_rel"] = num(res.max_rel);
    doc["mean_rel"] = num(res.mean_rel);
    doc["pairs"] = res.pairs;
    emit(o, "transform-law", doc);
    return 0;
}

int run_blowup(const Opts& o) {
    ModelDomain d = parse_domain(o);
    KernelModel K = make_kernel(d, o);
    Point X = parse_point(o.x, "--x");
    auto fit = blowup_exponent(K, X, parse_reals(o.deltas, "--deltas"));
    json doc;
    doc["config"] = config_json("blowup", o);
    doc["exponent"] = num(fit.exponent);
    doc["intercept"] = num(fit.intercept);
    doc["max_fit_dev"] = num(fit.max_fit_dev);
    std::ostringstream csv;
    csv << "delta,log_diag\n";
    for (size_t i = 0; i < fit.deltas.size(); ++i)
        csv << num(fit.deltas[i]) << "," << num(fit.log_diag[i]) << "\n";
    emit(o, "blowup", doc, csv.str());
    return 0;
}

int run_klembeck(const Opts& o) {
    ModelDomain d = parse_domain(o);
    KernelModel K = make_kernel(d, o);
    Point X = parse_point(o.x, "--x");
    Point v = o.v.empty() ? Point(cplx{1.0, 0.0}) : parse_point(o.v, "--v");
    if (d.dim() == 2 && v.dim() == 1) v = Point{v[0], cplx{0.0, 0.0}};
    auto prof = klembeck_profile(K, X, v, parse_reals(o.deltas, "--deltas"));
    json doc;
    doc["config"] = config_json("klembeck", o);
    doc["target"] = num(prof.target);
    doc["improving"] = prof.improving;
    auto rows = json::array();
    std::ostringstream csv;
    csv << "delta,curvature,ok\n";
    for (const auto& p : prof.points) {
        rows.push_back({{"delta", num(p.delta)}, {"curvature", num(p.curvature)}, {"ok", p.ok}});
        csv << num(p.delta) << "," << num(p.curvature) << "," << (p.ok ? 1 : 0) << "\n";
    }
    doc["profile"] = rows;
    emit(o, "klembeck", doc, csv.str());
    return 0;
}

int run_scale(const Opts& o) {
    ModelDomain d = parse_domain(o);
    Point X = parse_point(o.x, "--x");
    auto rep = scale_sequence(d, X, parse_reals(o.deltas, "--deltas"), o.samples, o.seed);
    json doc;
    doc["config"] = config_json("scale", o);
    doc["decreasing"] = rep.decreasing;
    doc["final_defect"] = num(rep.final_defect);
    auto rows = json::array();
    std::ostringstream csv;
    csv << "delta,defect,window,samples\n";
    for (const auto& s : rep.steps) {
        rows.push_back({{"delta", num(s.delta)},
                        {"defect", num(s.defect)},
                        {"window", num(s.window)},
                        {"samples", s.samples}});
        csv << num(s.delta) << "," << num(s.defect) << "," << num(s.window) << ","
            << s.samples << "\n";
    }
    doc["steps"] = rows;
    emit(o, "scale", doc, csv.str());
    return 0;
}

int run_cayley(const Opts& o) {
    Point z = parse_point(o.z, "--z");
    Point w = o.direction == "to-ball" ? cayley_siegel_to_ball(z) : cayley_ball_to_siegel(z);
    json doc;
    doc["config"] = config_json("cayley", o);
    doc["image"] = report::point_json(w);
    doc["round_trip"] = report::point_json(o.direction == "to-ball" ? cayley_ball_to_siegel(w)
                                                                    : cayley_siegel_to_ball(w));
    emit(o, "cayley", doc);
    return 0;
}

int run_bers_recover(const Opts& o) {
    ModelDomain d = parse_domain(o);
    if (o.aut.empty()) throw usage_error("bers-recover needs --aut (the planted map)");
    Automorphism h0 = Automorphism::from_descriptor(o.aut);
    if (!(h0.domain() == d)) throw usage_error("automorphism domain does not match --domain");
    HomAction phi{d, d, [h0](const HoloFunc& f) {
                      return HoloFunc([f, h0](const Point& w) { return f(h0.apply(w)); });
                  }};
    auto test = standard_test_set(d);
    Automorphism h0inv = h0.inverse();
    std::function<Point(const Point&)> inv = [h0inv](const Point& z) { return h0inv.apply(z); };
    double tol = tol_or(o, 1e-8);
    auto rec = bers_recover(phi, test, o.grid, tol, o.seed, &inv);
    double planted_dev = 0.0;
    for (size_t i = 0; i < rec.grid.size(); ++i)
        planted_dev = std::max(planted_dev, dist(rec.values[i], h0.apply(rec.grid[i])));
    json doc;
    doc["config"] = config_json("bers-recover", o);
    doc["h"] = json::parse(h0.descriptor());
    doc["residual_max"] = num(rec.residual_max);
    doc["grid_size"] = static_cast<int>(rec.grid.size());
    doc["tol"] = num(tol);
    doc["planted_deviation"] = num(planted_dev);
    doc["injective_on_grid"] = rec.injective_on_grid;
    doc["inverse_certified"] = rec.inverse_certified;
    doc["verdict"] = "recovered";
    emit(o, "bers-recover", doc);
    return 0;
}

int run_character(const Opts& o) {
    ModelDomain d = parse_domain(o);
    Point c = parse_point(o.c, "--c");
    CharacterAction chi{d, [c](const HoloFunc& f) { return f(c); }};
    auto test = standard_test_set(d);
    double tol = tol_or(o, 1e-8);
    auto loc = character_locate(chi, test, tol);
    json doc;
    doc["config"] = config_json("character", o);
    doc["c"] = report::point_json(loc.c);
    doc["residual_max"] = num(loc.residual_max);
    doc["tol"] = num(tol);
    doc["boundary_distance"] = num(loc.boundary_distance);
    doc["verdict"] = "point_evaluation";
    emit(o, "character", doc);
    return 0;
}

int run_classify_annulus(const Opts& o) {
    if (o.series.empty()) throw usage_error("classify-annulus needs --series file.json");
    std::ifstream in(o.series);
    if (!in) throw usage_error("cannot open series file: " + o.series);
    std::stringstream buf;
    buf << in.rdbuf();
    auto cl = annulus_auto_classify(laurent_from_json(buf.str()), o.r, tol_or(o, 1e-9));
    json doc;
    doc["config"] = config_json("classify-annulus", o);
    doc["verdict"] = cl.accepted ? "accept" : "reject";
    doc["reason"] = cl.reason;
    if (cl.accepted) {
        doc["alpha"] = report::complex_json(cl.alpha);
        doc["flip"] = cl.flip;
    }
    doc["off_mode_mass"] = num(cl.off_mode_mass);
    doc["radii"] = {{"inner", num(cl.probe_radii.r_inner)},
                    {"outer", num(cl.probe_radii.r_outer)},
                    {"consistent", cl.radii_consistent}};
    emit(o, "classify-annulus", doc);
    return 0;
}

int run_lipschitz(const Opts& o) {
    ModelDomain d = parse_domain(o);
    PairSampler sampler(d, o.pairs, o.seed);
    auto est = lipschitz_norm(make_func(o.f), sampler);
    json doc;
    doc["config"] = config_json("lipschitz", o);
    doc["norm"] = num(est.norm);
    doc["budget"] = est.budget;
    doc["max_pair"] = pair_json(est.max_pair);
    emit(o, "lipschitz", doc);
    return 0;
}

int run_family(const Opts& o) {
    ModelDomain d = parse_domain(o);
    if (o.family.empty()) throw usage_error("family needs --family");
    auto fam = make_family(d, o.family, o.count, o.seed);
    PairSampler sampler(d, o.pairs, o.seed + 1);
    CompactExhaustion ex(d, 4, 0.2, 256, o.seed + 2);
    auto ev = family_classify(make_func(o.f), fam, ex, sampler);
    json doc;
    doc["config"] = config_json("family", o);
    doc["verdict"] = verdict_name(ev.verdict);
    doc["budget"] = ev.budget;
    doc["factor"] = num(ev.blowup_factor);
    doc["note"] = ev.note;
    doc["uniform_bound_ok"] = ev.uniform_bound_ok;
    doc["subsequence_found"] = ev.subsequence_found;
    std::ostringstream csv;
    csv << "j,sampled_norm,max_pair\n";
    for (size_t j = 0; j < ev.norms.size(); ++j)
        csv << (j + 1) << "," << num(ev.norms[j]) << ","
            << pair_json(ev.max_pairs[j]).dump() << "\n";
    emit(o, "family", doc, csv.str());
    return 0;
}

int run_limit(const Opts& o) {
    ModelDomain d = parse_domain(o);
    if (o.family.empty()) throw usage_error("limit needs --family");
    auto fam = make_family(d, o.family, o.count, o.seed);
    CompactExhaustion ex(d, 4, 0.2, 256, o.seed + 2);
    auto rep = normal_limit_classify(fam, ex, tol_or(o, 1e-6));
    json doc;
    doc["config"] = config_json("limit", o);
    doc["verdict"] = limit_verdict_name(rep.verdict);
    doc["note"] = rep.note;
    auto lv = json::array();
    for (double dev : rep.level_cauchy) lv.push_back(num(dev));
    doc["level_cauchy"] = lv;
    if (rep.verdict == LimitVerdict::constant) {
        doc["limit_constant"] = report::point_json(rep.limit_constant);
        doc["constant_rho"] = num(rep.constant_boundary_rho);
    }
    if (rep.limit_aut) {
        doc["limit_aut"] = json::parse(rep.limit_aut->descriptor());
        doc["fit_residual"] = num(rep.fit_residual);
    }
    emit(o, "limit", doc);
    return 0;
}

int run_prop52(const Opts& o) {
    ModelDomain d = parse_domain(o);
    if (o.family.empty()) throw usage_error("prop52 needs --family");
    auto fam = make_family(d, o.family, o.count, o.seed);
    CompactExhaustion ex(d, 4, 0.2, 256, o.seed + 2);
    std::function<Point(const Point&)> f;
    if (o.f == "id") {
        f = [](const Point& z) { return z; };
    } else if (o.f == "sq") {
        f = [](const Point& z) { return Point(z[0] * z[0]); };
    } else if (!o.aut.empty()) {
        Automorphism a = Automorphism::from_descriptor(o.aut);
        f = [a](const Point& z) { return a.apply(z); };
    } else {
        throw usage_error("prop52 --f must be id or sq, or pass --aut");
    }
    auto rep = rescaling_composition_check(f, fam, ex, tol_or(o, 1e-6));
    json doc;
    doc["config"] = config_json("prop52", o);
    doc["tail_cauchy"] = num(rep.tail_cauchy);
    doc["g_is_automorphism"] = rep.g_is_automorphism;
    doc["g_fit_residual"] = num(rep.g_fit_residual);
    doc["h_cluster_size"] = rep.h_cluster_size;
    doc["h_cluster_diameter"] = num(rep.h_cluster_diameter);
    json hl = json::array();
    for (double v : rep.h_level_dev) hl.push_back(num(v));
    doc["h_level_dev"] = hl;
    doc["f_injective_on_grid"] = rep.f_injective_on_grid;
    doc["f_surjectivity_gap"] = num(rep.f_surjectivity_gap);
    doc["note"] = rep.note;
    emit(o, "prop52", doc);
    return 0;
}

void add_common(CLI::App* sub, Opts& o) {
    sub->add_option("--domain", o.domain);
    sub->add_option("--r", o.r);
    sub->add_option("--m", o.m);
    sub->add_option("--mode", o.mode);
    sub->add_option("--degree", o.degree);
    sub->add_option("--degree2", o.degree2);
    sub->add_option("--z", o.z);
    sub->add_option("--zeta", o.zeta);
    sub->add_option("--v", o.v);
    sub->add_option("--x", o.x);
    sub->add_option("--c", o.c);
    sub->add_option("--deltas", o.deltas);
    sub->add_option("--aut", o.aut);
    sub->add_option("--series", o.series);
    sub->add_option("--f", o.f);
    sub->add_option("--family", o.family);
    sub->add_option("--direction", o.direction);
    sub->add_option("--pairs", o.pairs);
    sub->add_option("--count", o.count);
    sub->add_option("--samples", o.samples);
    sub->add_option("--grid", o.grid);
    sub->add_option("--seed", o.seed);
    sub->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
    sub->add_option("--outdir", o.outdir);
    sub->set_config("--config");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for algebra/domain correspondence on model domains"};
    app.require_subcommand(0, 1);
    Opts o;

    struct Sub {
        const char* name;
        int (*fn)(const Opts&);
    };
    const Sub subs[] = {
        {"kernel", run_kernel},
        {"curvature", run_curvature},
        {"transform-law", run_transform_law},
        {"blowup", run_blowup},
        {"klembeck", run_klembeck},
        {"scale", run_scale},
        {"cayley", run_cayley},
        {"bers-recover", run_bers_recover},
        {"character", run_character},
        {"classify-annulus", run_classify_annulus},
        {"lipschitz", run_lipschitz},
        {"family", run_family},
        {"limit", run_limit},
        {"prop52", run_prop52},
    };
    for (const Sub& s : subs) add_common(app.add_subcommand(s.name), o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        json err{{"error", {{"type", "usage"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 2;
    }
    if (app.get_subcommands().empty()) {
        json err{{"error", {{"type", "usage"}, {"message", "missing or unknown subcommand"}}}};
        std::cout << err.dump(2) << "\n";
        return 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        for (const Sub& s : subs)
            if (name == s.name) return s.fn(o);
        throw usage_error("unknown subcommand: " + name);
    } catch (const usage_error& e) {
        json err{{"error", {{"type", "usage"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err{{"error", {{"type", "computation"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
}
