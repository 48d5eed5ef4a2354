#pragma once

#include <cstdint>
#include <vector>

#include "biholo/domain.hpp"
#include "biholo/types.hpp"

namespace biholo {

/// Unitary-affine boundary frame at X on a smooth strongly pseudoconvex
/// boundary point of a two-variable catalog domain: z = X + B w with the
/// first column the inner normal and the second a complex tangent, followed
/// by a holomorphic Levi-polynomial correction and a normal rescale so the
/// boundary osculates {Re W1 = |W2|^2} at the origin.
class BoundaryFrame {
public:
    BoundaryFrame(const ModelDomain& d, const Point& X);

    const Point& anchor() const { return X_; }
    double grad_norm() const { return grad_norm_; }
    double levi_tangent() const { return levi_tangent_; }
    double sigma() const { return sigma_; }  // normal rescale 2|grad|/Levi

    Point to_frame(const Point& z) const;     // w with z = X + B w
    Point from_frame(const Point& w) const;
    Point to_normalized(const Point& z) const;   // W coordinates
    Point from_normalized(const Point& W) const;

private:
    ModelDomain domain_;
    Point X_;
    Mat2 B_;            // unitary: columns inward-normal, tangent
    double grad_norm_;
    double levi_tangent_;
    double sigma_;
    Mat2 hess_;         // holomorphic Hessian of rho at X
    cplx q_of(const Point& w) const;  // Levi polynomial correction in frame coords
};

struct DilationStep {
    Point anchor;   // interior anchor X'
    double delta;   // its boundary distance
};

/// Anisotropic dilation psi(z) = (X'1 + (z1 - X'1)/delta, X'2 + (z2 - X'2)/sqrt(delta)).
struct DilationMap {
    Point anchor;
    double delta;
    Point apply(const Point& z) const;
    Point inverse(const Point& u) const;
    double jacobian() const;  // complex Jacobian determinant delta^{-3/2}
};

DilationMap dilation_map(const DilationStep& step);

struct ScaleStep {
    double delta;
    double defect;   // max |Re u1 - |u2|^2| over rescaled boundary samples
    double window;   // tangential sampling radius sqrt(sigma * delta)
    int samples;
};

struct ScaleReport {
    std::vector<ScaleStep> steps;
    bool decreasing;   // defects nonincreasing within a 10% slack
    double final_defect;
};

/// Samples the boundary near X in a window adapted to delta, pushes the
/// samples through the normalized frame and the dilation, and measures the
/// distance to the Siegel boundary {Re u1 = |u2|^2}.
ScaleReport scale_sequence(const ModelDomain& d, const Point& X,
                           const std::vector<double>& deltas, int samples_per_step = 400,
                           std::uint64_t seed = 11);

/// Cayley transform: ball (z1,z2) -> Siegel (w1,w2) and its inverse.
Point cayley_ball_to_siegel(const Point& z);
Point cayley_siegel_to_ball(const Point& w);

}  // namespace biholo
