#include "biholo/domain.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace biholo {

using json = nlohmann::json;

std::string kind_name(DomainKind k) {
    switch (k) {
        case DomainKind::disk: return "disk";
        case DomainKind::annulus: return "annulus";
        case DomainKind::bidisc: return "bidisc";
        case DomainKind::ball: return "ball";
        case DomainKind::ellipsoid: return "ellipsoid";
        case DomainKind::siegel: return "siegel";
    }
    return "?";
}

ModelDomain ModelDomain::disk() { return {DomainKind::disk, 0.0, 1}; }

ModelDomain ModelDomain::annulus(double r) {
    if (!(r > 0.0 && r < 1.0)) throw construction_error("annulus parameter must satisfy 0 < r < 1");
    return {DomainKind::annulus, r, 1};
}

ModelDomain ModelDomain::bidisc() { return {DomainKind::bidisc, 0.0, 1}; }
ModelDomain ModelDomain::ball() { return {DomainKind::ball, 0.0, 1}; }

ModelDomain ModelDomain::ellipsoid(int m) {
    if (m < 1) throw construction_error("ellipsoid exponent must satisfy m >= 1");
    return {DomainKind::ellipsoid, 0.0, m};
}

ModelDomain ModelDomain::siegel() { return {DomainKind::siegel, 0.0, 1}; }

int ModelDomain::dim() const {
    switch (kind_) {
        case DomainKind::disk:
        case DomainKind::annulus: return 1;
        default: return 2;
    }
}

double ModelDomain::rho(const Point& z) const {
    if (z.dim() != dim()) throw usage_error("point dimension does not match domain");
    switch (kind_) {
        case DomainKind::disk: return std::norm(z[0]) - 1.0;
        case DomainKind::annulus: {
            const double a = std::abs(z[0]);
            return std::max(a - 1.0, r_ - a);
        }
        case DomainKind::bidisc:
            return std::max(std::norm(z[0]) - 1.0, std::norm(z[1]) - 1.0);
        case DomainKind::ball: return z.norm2() - 1.0;
        case DomainKind::ellipsoid:
            return std::norm(z[0]) + std::pow(std::norm(z[1]), m_) - 1.0;
        case DomainKind::siegel: return std::norm(z[1]) - z[0].real();
    }
    return 0.0;
}

double ModelDomain::boundary_distance(const Point& z) const {
    switch (kind_) {
        case DomainKind::disk: return std::abs(1.0 - std::abs(z[0]));
        case DomainKind::annulus: {
            const double a = std::abs(z[0]);
            if (a >= 1.0) return a - 1.0;
            if (a <= r_) return r_ - a;
            return std::min(1.0 - a, a - r_);
        }
        case DomainKind::bidisc: {
            const double d1 = 1.0 - std::abs(z[0]), d2 = 1.0 - std::abs(z[1]);
            if (d1 >= 0 && d2 >= 0) return std::min(d1, d2);
            // outside: distance to the closed polydisc
            const double e1 = std::max(0.0, -d1), e2 = std::max(0.0, -d2);
            return std::sqrt(e1 * e1 + e2 * e2);
        }
        case DomainKind::ball: return std::abs(1.0 - z.norm());
        case DomainKind::ellipsoid:
        case DomainKind::siegel: {
            const double r = rho(z);
            const Point g = rho_gradient(z);
            const double gn = 2.0 * g.norm();  // real gradient norm
            if (gn == 0.0) return std::abs(r);
            return std::abs(r) / gn;
        }
    }
    return 0.0;
}

Point ModelDomain::rho_gradient(const Point& z) const {
    switch (kind_) {
        case DomainKind::disk: return Point(std::conj(z[0]));
        case DomainKind::annulus: {
            const double a = std::abs(z[0]);
            // active branch of max(|z|-1, r-|z|)
            if (a - 1.0 >= r_ - a) return Point(std::conj(z[0]) / (2.0 * a));
            return Point(-std::conj(z[0]) / (2.0 * a));
        }
        case DomainKind::bidisc: {
            const double f1 = std::norm(z[0]) - 1.0, f2 = std::norm(z[1]) - 1.0;
            if (std::abs(f1 - f2) < 1e-9)
                throw construction_error("bidisc defining function is not smooth here (corner)");
            if (f1 > f2) return Point(std::conj(z[0]), 0.0);
            return Point(0.0, std::conj(z[1]));
        }
        case DomainKind::ball: return Point(std::conj(z[0]), std::conj(z[1]));
        case DomainKind::ellipsoid: {
            const double y = std::norm(z[1]);
            return Point(std::conj(z[0]),
                         static_cast<double>(m_) * std::pow(y, m_ - 1) * std::conj(z[1]));
        }
        case DomainKind::siegel: return Point(-0.5, std::conj(z[1]));
    }
    return Point(0.0);
}

std::array<std::array<cplx, 2>, 2> ModelDomain::rho_levi(const Point& z) const {
    std::array<std::array<cplx, 2>, 2> L{};
    switch (kind_) {
        case DomainKind::ball:
            L[0][0] = 1.0;
            L[1][1] = 1.0;
            break;
        case DomainKind::ellipsoid: {
            const double y = std::norm(z[1]);
            L[0][0] = 1.0;
            L[1][1] = static_cast<double>(m_ * m_) * std::pow(y, m_ - 1);
            break;
        }
        case DomainKind::siegel:
            L[1][1] = 1.0;
            break;
        case DomainKind::bidisc: {
            const double f1 = std::norm(z[0]) - 1.0, f2 = std::norm(z[1]) - 1.0;
            if (std::abs(f1 - f2) < 1e-9)
                throw construction_error("bidisc defining function is not smooth here (corner)");
            if (f1 > f2)
                L[0][0] = 1.0;
            else
                L[1][1] = 1.0;
            break;
        }
        default: throw usage_error("rho_levi: two-variable domains only");
    }
    return L;
}

std::array<std::array<cplx, 2>, 2> ModelDomain::rho_pure_hessian(const Point& z) const {
    std::array<std::array<cplx, 2>, 2> H{};
    switch (kind_) {
        case DomainKind::ball:
        case DomainKind::bidisc:
        case DomainKind::siegel: break;  // identically zero
        case DomainKind::ellipsoid: {
            // only the z2z2 entry: m(m-1)|z2|^{2(m-2)} zbar2^2... for |z2|^{2m}
            if (m_ >= 2) {
                const cplx zb = std::conj(z[1]);
                H[1][1] = static_cast<double>(m_ * (m_ - 1)) *
                          std::pow(std::norm(z[1]), m_ - 2) * zb * zb;
            }
            break;
        }
        default: throw usage_error("rho_pure_hessian: two-variable domains only");
    }
    return H;
}

std::string ModelDomain::descriptor() const {
    json j;
    j["kind"] = kind_name(kind_);
    if (kind_ == DomainKind::annulus) j["r"] = r_;
    if (kind_ == DomainKind::ellipsoid) j["m"] = m_;
    return j.dump();
}

ModelDomain domain_from_descriptor(const std::string& text) {
    json j = json::parse(text);
    const std::string k = j.at("kind").get<std::string>();
    if (k == "disk") return ModelDomain::disk();
    if (k == "annulus") return ModelDomain::annulus(j.at("r").get<double>());
    if (k == "bidisc") return ModelDomain::bidisc();
    if (k == "ball") return ModelDomain::ball();
    if (k == "ellipsoid") return ModelDomain::ellipsoid(j.at("m").get<int>());
    if (k == "siegel") return ModelDomain::siegel();
    throw construction_error("unknown domain kind: " + k);
}

}  // namespace biholo
