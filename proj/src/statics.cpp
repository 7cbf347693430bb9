#include "chainsim/statics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

namespace chainsim {
namespace {

constexpr double kConditionLimit = 1e12;
constexpr double kDegenerateLength = 1e-9;  // m

double condition_number(const Eigen::Matrix3d& m) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(2) <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / sv(2);
}

}  // namespace

ForceSolution static_forces(const Scene& scene, const Pose& pose) {
    const int n = scene.drive_count();

    // Columns are the unit pull directions u_i (attachment toward anchor).
    Eigen::Matrix<double, 3, Eigen::Dynamic> dirs(3, n);
    for (int i = 0; i < n; ++i) {
        const Vec3 diff = scene.effective_anchor(i) - pose.position;
        const double len = diff.norm();
        if (len <= kDegenerateLength) {
            throw SingularGeometry("chain " + std::to_string(i) +
                                   " has zero length at this pose");
        }
        dirs.col(i) = diff / len;
    }

    const Vec3 weight(0.0, 0.0, -scene.total_weight());
    const Vec3 rhs = -weight;

    Eigen::VectorXd forces(n);
    if (n == 3) {
        const Eigen::Matrix3d m = dirs;
        const double cond = condition_number(m);
        if (!(cond < kConditionLimit)) {
            throw SingularGeometry("chain directions are degenerate (condition " +
                                   std::to_string(cond) + ")");
        }
        forces = m.partialPivLu().solve(rhs);
    } else {
        // Minimum-norm solution lies in the row space: f = U^T (U U^T)^-1 rhs.
        const Eigen::Matrix3d gram = dirs * dirs.transpose();
        const double cond = condition_number(gram);
        if (!(cond < kConditionLimit)) {
            throw SingularGeometry("Gram matrix of chain directions is degenerate "
                                   "(condition " + std::to_string(cond) + ")");
        }
        forces = dirs.transpose() * gram.ldlt().solve(rhs);
    }

    ForceSolution sol;
    sol.axial_forces.assign(forces.data(), forces.data() + n);
    sol.residual = (dirs * forces + weight).norm();
    sol.margins.resize(static_cast<size_t>(n));
    sol.feasible = true;
    for (int i = 0; i < n; ++i) {
        const ChainDrive& d = scene.drives[static_cast<size_t>(i)];
        const double f = forces(i);
        const double margin = std::min(d.tension_limit - f, d.compression_limit + f);
        sol.margins[static_cast<size_t>(i)] = margin;
        if (margin < 0.0) sol.feasible = false;
    }
    return sol;
}

FeasibilityCheck force_feasible(const Scene& scene, const Pose& pose) {
    const ForceSolution sol = static_forces(scene, pose);
    FeasibilityCheck check;
    check.feasible = sol.feasible;
    if (!sol.feasible) {
        for (size_t i = 0; i < sol.margins.size(); ++i) {
            if (sol.margins[i] < 0.0) {
                check.limiting_chain = static_cast<int>(i);
                check.excess = -sol.margins[i];
                break;
            }
        }
    } else {
        int tightest = 0;
        for (size_t i = 1; i < sol.margins.size(); ++i) {
            if (sol.margins[i] < sol.margins[static_cast<size_t>(tightest)]) {
                tightest = static_cast<int>(i);
            }
        }
        check.limiting_chain = tightest;
        check.excess = 0.0;
    }
    return check;
}

}  // namespace chainsim
