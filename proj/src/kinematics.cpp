#include "chainsim/kinematics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace chainsim {
namespace {

constexpr double kDegenerateLength = 1e-9;       // m
constexpr double kPlaneOffsetTol = 1e-9;         // m^2, negative z^2 tolerated
constexpr double kMirrorTieTol = 1e-12;          // m, equal-z ambiguity
constexpr double kGradientTol = 1e-10;
constexpr double kStepTol = 1e-12;               // m
constexpr int kMaxIterations = 100;

}  // namespace

ChainLengths inverse_kinematics(const Scene& scene, const Pose& pose) {
    ChainLengths lengths;
    lengths.reserve(scene.drives.size());
    for (int i = 0; i < scene.drive_count(); ++i) {
        lengths.push_back((scene.effective_anchor(i) - pose.position).norm());
    }
    return lengths;
}

Pose forward_kinematics_3(const Scene& scene, const ChainLengths& lengths) {
    const Vec3 e0 = scene.effective_anchor(0);
    const Vec3 e1 = scene.effective_anchor(1);
    const Vec3 e2 = scene.effective_anchor(2);
    const double r0 = lengths[0];
    const double r1 = lengths[1];
    const double r2 = lengths[2];

    // Local orthonormal frame in the effective-anchor plane, origin at e0.
    const double d = (e1 - e0).norm();
    const Vec3 ex = (e1 - e0) / d;
    const double i = ex.dot(e2 - e0);
    const Vec3 ey_raw = (e2 - e0) - i * ex;
    const double j = ey_raw.norm();
    const Vec3 ey = ey_raw / j;
    const Vec3 ez = ex.cross(ey);

    const double x = (r0 * r0 - r1 * r1 + d * d) / (2.0 * d);
    const double y = (r0 * r0 - r2 * r2 + i * i + j * j) / (2.0 * j) - (i / j) * x;
    double h2 = r0 * r0 - x * x - y * y;
    if (h2 < -kPlaneOffsetTol) {
        throw NoIntersection("spheres do not intersect (plane offset^2 = " +
                             std::to_string(h2) + " m^2)");
    }
    if (h2 < 0.0) h2 = 0.0;
    const double h = std::sqrt(h2);

    const Vec3 in_plane = e0 + x * ex + y * ey;
    if (h == 0.0) {
        return Pose{in_plane};  // tangent spheres, single intersection point
    }
    const Vec3 lower = in_plane - h * ez;
    const Vec3 upper = in_plane + h * ez;
    if (std::abs(lower.z() - upper.z()) < kMirrorTieTol) {
        throw AmbiguousSolution("mirror solutions share the same height");
    }
    return Pose{lower.z() < upper.z() ? lower : upper};
}

Pose forward_kinematics_lsq(const Scene& scene, const ChainLengths& lengths,
                            const Pose& initial_guess) {
    const int n = scene.drive_count();
    std::vector<Vec3> eff(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) eff[static_cast<size_t>(i)] = scene.effective_anchor(i);

    const Vec3 box_center(scene.room.size_x / 2.0, scene.room.size_y / 2.0,
                          scene.room.size_z / 2.0);
    const Vec3 box_half = 10.0 * 0.5 *
                          Vec3(scene.room.size_x, scene.room.size_y, scene.room.size_z);

    auto residuals = [&](const Vec3& p, Eigen::VectorXd& r) {
        for (int i = 0; i < n; ++i) {
            r(i) = (eff[static_cast<size_t>(i)] - p).norm() - lengths[static_cast<size_t>(i)];
        }
    };

    Vec3 p = initial_guess.position;
    Eigen::VectorXd r(n);
    residuals(p, r);
    double cost = r.squaredNorm();
    double damping = 1e-3;

    for (int iter = 1; iter <= kMaxIterations; ++iter) {
        Eigen::Matrix<double, Eigen::Dynamic, 3> jr(n, 3);
        for (int i = 0; i < n; ++i) {
            const Vec3 diff = p - eff[static_cast<size_t>(i)];
            const double dist = diff.norm();
            jr.row(i) = dist > 1e-12 ? (diff / dist).transpose() : Vec3::Zero().transpose();
        }
        const Vec3 gradient = 2.0 * jr.transpose() * r;
        if (gradient.norm() < kGradientTol) {
            return Pose{p};
        }

        const Eigen::Matrix3d normal = jr.transpose() * jr;
        const Vec3 rhs = -jr.transpose() * r;
        const Vec3 step =
            (normal + damping * Eigen::Matrix3d::Identity()).ldlt().solve(rhs);

        Eigen::VectorXd r_trial(n);
        residuals(p + step, r_trial);
        const double cost_trial = r_trial.squaredNorm();
        if (cost_trial < cost) {
            p += step;
            r = r_trial;
            cost = cost_trial;
            damping = std::max(damping / 10.0, 1e-12);
            if ((p - box_center).cwiseAbs().cwiseQuotient(box_half).maxCoeff() > 1.0) {
                throw DivergedGuess("iterate left the 10x room bounding box");
            }
            if (step.norm() < kStepTol) {
                return Pose{p};
            }
        } else {
            damping *= 10.0;
            if (step.norm() < kStepTol) {
                return Pose{p};  // no productive step left at any damping
            }
        }
    }
    throw NoConvergence(kMaxIterations, std::sqrt(cost));
}

Jacobian jacobian(const Scene& scene, const Pose& pose) {
    const int n = scene.drive_count();
    Jacobian rows(n, 3);
    for (int i = 0; i < n; ++i) {
        const Vec3 diff = pose.position - scene.effective_anchor(i);
        const double len = diff.norm();
        if (len <= kDegenerateLength) {
            throw DegeneratePose("chain " + std::to_string(i) +
                                 " has zero length at this pose");
        }
        rows.row(i) = (diff / len).transpose();
    }
    return rows;
}

double gimbal_angle(const Scene& scene, const Pose& pose, int chain_index) {
    const Vec3 diff = scene.effective_anchor(chain_index) - pose.position;
    const double len = diff.norm();
    if (len <= kDegenerateLength) {
        throw DegeneratePose("chain " + std::to_string(chain_index) +
                             " has zero length at this pose");
    }
    const Vec3 dir = diff / len;
    const double horizontal = std::hypot(dir.x(), dir.y());
    return std::atan2(horizontal, dir.z());
}

}  // namespace chainsim
