#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biholo/bergman.hpp"
#include "biholo/holo_algebra.hpp"
#include "biholo/limits.hpp"
#include "biholo/scaling.hpp"
#include "biholo/series.hpp"

namespace py = pybind11;
using namespace biholo;

namespace {

using PyPoint = std::vector<cplx>;

Point to_point(const PyPoint& v) {
    if (v.size() == 1) return Point(v[0]);
    if (v.size() == 2) return Point{v[0], v[1]};
    throw usage_error("points have one or two complex coordinates");
}

PyPoint from_point(const Point& p) {
    PyPoint out(static_cast<size_t>(p.dim()));
    for (int i = 0; i < p.dim(); ++i) out[static_cast<size_t>(i)] = p[i];
    return out;
}

std::vector<PointPair> to_pairs(const std::vector<std::pair<PyPoint, PyPoint>>& ps) {
    std::vector<PointPair> out;
    out.reserve(ps.size());
    for (const auto& [a, b] : ps) out.emplace_back(to_point(a), to_point(b));
    return out;
}

HoloFunc to_holofunc(const py::function& f) {
    return HoloFunc([f](const Point& z) { return f(from_point(z)).cast<cplx>(); });
}

ModelDomain make_domain(const std::string& kind, double r, int m) {
    if (kind == "disk") return ModelDomain::disk();
    if (kind == "annulus") return ModelDomain::annulus(r);
    if (kind == "bidisc") return ModelDomain::bidisc();
    if (kind == "ball") return ModelDomain::ball();
    if (kind == "ellipsoid") return ModelDomain::ellipsoid(m);
    if (kind == "siegel") return ModelDomain::siegel();
    throw construction_error("unknown domain kind: " + kind);
}

TruncatedLaurent laurent_from_entries(const std::vector<std::pair<int, cplx>>& entries,
                                      cplx center) {
    int neg = 0, pos = 0;
    for (const auto& [j, c] : entries) {
        neg = std::max(neg, -j);
        pos = std::max(pos, j);
    }
    TruncatedLaurent s(neg, pos, center);
    for (const auto& [j, c] : entries) s.set_coeff(j, c);
    return s;
}

}  // namespace

PYBIND11_MODULE(pybiholo, mod) {
    mod.doc() = "numerical toolkit for algebra/domain correspondence on model domains";

    py::register_exception<usage_error>(mod, "UsageError");
    py::register_exception<construction_error>(mod, "ConstructionError");
    py::register_exception<eval_domain_error>(mod, "EvalDomainError");
    py::register_exception<recovery_error>(mod, "RecoveryError");
    py::register_exception<unit_obstruction_error>(mod, "UnitObstructionError");
    py::register_exception<gram_singular_error>(mod, "GramSingularError");
    py::register_exception<stencil_error>(mod, "StencilError");

    py::class_<ModelDomain>(mod, "Domain")
        .def(py::init(&make_domain), py::arg("kind"), py::arg("r") = 0.5, py::arg("m") = 2)
        .def_property_readonly("dim", &ModelDomain::dim)
        .def("rho", [](const ModelDomain& d, const PyPoint& z) { return d.rho(to_point(z)); })
        .def("contains",
             [](const ModelDomain& d, const PyPoint& z) { return d.contains(to_point(z)); })
        .def("boundary_distance",
             [](const ModelDomain& d, const PyPoint& z) {
                 return d.boundary_distance(to_point(z));
             })
        .def("descriptor", &ModelDomain::descriptor);

    py::class_<Automorphism>(mod, "Automorphism")
        .def_static("disk_mobius", &Automorphism::disk_mobius, py::arg("a"), py::arg("theta"))
        .def_static("annulus_rotation", &Automorphism::annulus_rotation, py::arg("r"),
                    py::arg("theta"))
        .def_static("annulus_flip", &Automorphism::annulus_flip, py::arg("r"), py::arg("theta"))
        .def_static(
            "ball_aut",
            [](const PyPoint& a, const std::vector<std::vector<cplx>>& U) {
                Mat2 M{{{U.at(0).at(0), U.at(0).at(1)}, {U.at(1).at(0), U.at(1).at(1)}}};
                return Automorphism::ball_aut(to_point(a), M);
            },
            py::arg("a"), py::arg("U"))
        .def_static("siegel_aff", &Automorphism::siegel_aff, py::arg("lam"), py::arg("theta"),
                    py::arg("b"), py::arg("s"))
        .def_static("identity", &Automorphism::identity, py::arg("domain"))
        .def_static("from_descriptor", &Automorphism::from_descriptor)
        .def("apply",
             [](const Automorphism& a, const PyPoint& z) {
                 return from_point(a.apply(to_point(z)));
             })
        .def("jacobian",
             [](const Automorphism& a, const PyPoint& z) { return a.jacobian(to_point(z)); })
        .def("inverse", &Automorphism::inverse)
        .def_static("compose", &Automorphism::compose)
        .def("descriptor", &Automorphism::descriptor);

    py::class_<KernelModel>(mod, "Kernel")
        .def_static("closed_form", &KernelModel::closed_form)
        .def_static(
            "numeric",
            [](const ModelDomain& d, int degree, int degree2) {
                return build_numeric_kernel(d, degree, degree2);
            },
            py::arg("domain"), py::arg("degree"), py::arg("degree2") = -1)
        .def("eval",
             [](const KernelModel& k, const PyPoint& z, const PyPoint& zeta) {
                 return k.eval(to_point(z), to_point(zeta));
             })
        .def("diagonal",
             [](const KernelModel& k, const PyPoint& z) { return k.diagonal(to_point(z)); })
        .def("tail_bound",
             [](const KernelModel& k, const PyPoint& z, const PyPoint& zeta) {
                 return k.tail_bound(to_point(z), to_point(zeta));
             })
        .def_property_readonly("gram_condition", &KernelModel::gram_condition)
        .def_property_readonly("norm2_ratio", &KernelModel::norm2_ratio)
        .def("descriptor", &KernelModel::descriptor);

    mod.def(
        "curvature",
        [](const KernelModel& k, const PyPoint& z, const PyPoint& v) {
            auto c = holo_curvature(k, to_point(z), to_point(v));
            return py::dict(py::arg("value") = c.value, py::arg("radius") = c.radius);
        },
        py::arg("kernel"), py::arg("z"), py::arg("v"));

    mod.def(
        "transformation_residual",
        [](const KernelModel& k, const Automorphism& F,
           const std::vector<std::pair<PyPoint, PyPoint>>& pairs) {
            auto r = transformation_residual(k, F, to_pairs(pairs));
            return py::dict(py::arg("max_rel") = r.max_rel, py::arg("mean_rel") = r.mean_rel,
                            py::arg("pairs") = r.pairs);
        },
        py::arg("kernel"), py::arg("aut"), py::arg("pairs"));

    mod.def(
        "blowup_exponent",
        [](const KernelModel& k, const PyPoint& X, const std::vector<double>& deltas) {
            auto f = blowup_exponent(k, to_point(X), deltas);
            return py::dict(py::arg("exponent") = f.exponent, py::arg("intercept") = f.intercept,
                            py::arg("max_fit_dev") = f.max_fit_dev);
        },
        py::arg("kernel"), py::arg("x"), py::arg("deltas"));

    mod.def(
        "klembeck_profile",
        [](const KernelModel& k, const PyPoint& X, const PyPoint& v,
           const std::vector<double>& deltas) {
            auto p = klembeck_profile(k, to_point(X), to_point(v), deltas);
            py::list pts;
            for (const auto& q : p.points)
                pts.append(py::dict(py::arg("delta") = q.delta,
                                    py::arg("curvature") = q.curvature, py::arg("ok") = q.ok));
            return py::dict(py::arg("target") = p.target, py::arg("points") = pts);
        },
        py::arg("kernel"), py::arg("x"), py::arg("v"), py::arg("deltas"));

    mod.def(
        "scale_sequence",
        [](const ModelDomain& d, const PyPoint& X, const std::vector<double>& deltas,
           int samples, std::uint64_t seed) {
            auto r = scale_sequence(d, to_point(X), deltas, samples, seed);
            py::list steps;
            for (const auto& s : r.steps)
                steps.append(py::dict(py::arg("delta") = s.delta, py::arg("defect") = s.defect,
                                      py::arg("window") = s.window,
                                      py::arg("samples") = s.samples));
            return py::dict(py::arg("steps") = steps, py::arg("decreasing") = r.decreasing,
                            py::arg("final_defect") = r.final_defect);
        },
        py::arg("domain"), py::arg("x"), py::arg("deltas"), py::arg("samples") = 400,
        py::arg("seed") = 11);

    mod.def("cayley_ball_to_siegel",
            [](const PyPoint& z) { return from_point(cayley_ball_to_siegel(to_point(z))); });
    mod.def("cayley_siegel_to_ball",
            [](const PyPoint& w) { return from_point(cayley_siegel_to_ball(to_point(w))); });

    mod.def(
        "lipschitz_norm",
        [](const py::function& f, const ModelDomain& d, int pairs, std::uint64_t seed) {
            PairSampler sampler(d, pairs, seed);
            auto est = lipschitz_norm(to_holofunc(f), sampler);
            return py::dict(py::arg("norm") = est.norm, py::arg("budget") = est.budget);
        },
        py::arg("f"), py::arg("domain"), py::arg("pairs") = 2000, py::arg("seed") = 1);

    mod.def(
        "family_classify",
        [](const py::function& f, const std::vector<Automorphism>& phis, const ModelDomain& d,
           int pairs, std::uint64_t seed) {
            PairSampler sampler(d, pairs, seed);
            CompactExhaustion ex(d, 4, 0.2, 256, seed + 2);
            auto ev = family_classify(to_holofunc(f), phis, ex, sampler);
            return py::dict(py::arg("verdict") = verdict_name(ev.verdict),
                            py::arg("norms") = ev.norms,
                            py::arg("uniform_bound_ok") = ev.uniform_bound_ok,
                            py::arg("subsequence_found") = ev.subsequence_found,
                            py::arg("note") = ev.note);
        },
        py::arg("f"), py::arg("family"), py::arg("domain"), py::arg("pairs") = 2000,
        py::arg("seed") = 1);

    mod.def(
        "bers_recover",
        [](const ModelDomain& d, const py::function& act_on, int grid, double tol,
           std::uint64_t seed) {
            // act_on: python callable mapping f(point)->complex to its image
            HomAction phi{d, d, [act_on](const HoloFunc& f) {
                              py::function pf = py::cast(
                                  std::function<cplx(const PyPoint&)>(
                                      [f](const PyPoint& z) { return f(to_point(z)); }));
                              py::function img = act_on(pf);
                              return to_holofunc(img);
                          }};
            auto rec = bers_recover(phi, standard_test_set(d), grid, tol, seed);
            py::list gs, vs;
            for (const Point& z : rec.grid) gs.append(from_point(z));
            for (const Point& z : rec.values) vs.append(from_point(z));
            return py::dict(py::arg("grid") = gs, py::arg("values") = vs,
                            py::arg("residual_max") = rec.residual_max,
                            py::arg("injective_on_grid") = rec.injective_on_grid);
        },
        py::arg("domain"), py::arg("act"), py::arg("grid") = 64, py::arg("tol") = 1e-8,
        py::arg("seed") = 7);

    mod.def(
        "character_locate",
        [](const ModelDomain& d, const py::function& chi) {
            CharacterAction action{d, [chi](const HoloFunc& f) {
                                       py::function pf = py::cast(
                                           std::function<cplx(const PyPoint&)>(
                                               [f](const PyPoint& z) { return f(to_point(z)); }));
                                       return chi(pf).cast<cplx>();
                                   }};
            auto loc = character_locate(action, standard_test_set(d));
            return py::dict(py::arg("c") = from_point(loc.c),
                            py::arg("residual_max") = loc.residual_max,
                            py::arg("boundary_distance") = loc.boundary_distance);
        },
        py::arg("domain"), py::arg("chi"));

    mod.def(
        "annulus_auto_classify",
        [](const std::vector<std::pair<int, cplx>>& entries, double r, double tol) {
            auto cl = annulus_auto_classify(laurent_from_entries(entries, cplx{0, 0}), r, tol);
            return py::dict(py::arg("accepted") = cl.accepted, py::arg("alpha") = cl.alpha,
                            py::arg("flip") = cl.flip, py::arg("reason") = cl.reason,
                            py::arg("off_mode_mass") = cl.off_mode_mass,
                            py::arg("r_inner") = cl.probe_radii.r_inner,
                            py::arg("r_outer") = cl.probe_radii.r_outer);
        },
        py::arg("entries"), py::arg("r"), py::arg("tol") = 1e-9);

    mod.def(
        "normal_limit_classify",
        [](const std::vector<Automorphism>& phis, const ModelDomain& d, double tol,
           std::uint64_t seed) {
            CompactExhaustion ex(d, 4, 0.2, 256, seed);
            auto rep = normal_limit_classify(phis, ex, tol);
            py::dict out(py::arg("verdict") = limit_verdict_name(rep.verdict),
                         py::arg("note") = rep.note,
                         py::arg("level_cauchy") = rep.level_cauchy);
            if (rep.verdict == LimitVerdict::constant)
                out["limit_constant"] = from_point(rep.limit_constant);
            if (rep.limit_aut) out["limit_aut"] = rep.limit_aut->descriptor();
            return out;
        },
        py::arg("family"), py::arg("domain"), py::arg("tol") = 1e-6, py::arg("seed") = 3);
}
