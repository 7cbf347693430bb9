#include "chainsim/accuracy.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include <omp.h>

#include "chainsim/kinematics.hpp"
#include "chainsim/workspace.hpp"

namespace chainsim {
namespace {

constexpr double kConditionLimit = 1e12;

// Solve J dp = dL: exact for N = 3, least squares via normal equations for
// N > 3. Throws SingularJacobian past the condition threshold.
Vec3 solve_jacobian(const Jacobian& jac, const Eigen::VectorXd& rhs) {
    if (jac.rows() == 3) {
        const Eigen::Matrix3d m = jac;
        const Eigen::Matrix3d inv = m.inverse();
        const double cond = m.norm() * inv.norm();  // Frobenius-norm product
        if (!std::isfinite(cond) || cond > kConditionLimit) {
            throw SingularJacobian("Jacobian condition " + std::to_string(cond) +
                                   " exceeds 1e12");
        }
        return inv * rhs.head<3>();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const auto& sv = svd.singularValues();
    if (sv(2) <= 0.0 || sv(0) / sv(2) > kConditionLimit) {
        throw SingularJacobian("Jacobian is rank deficient at this pose");
    }
    const Eigen::Matrix3d normal = jac.transpose() * jac;
    return normal.ldlt().solve(jac.transpose() * rhs);
}

double cell_worst_case(const Scene& scene, const Vec3& center) {
    const Pose pose{center};
    const ChainLengths lengths = inverse_kinematics(scene, pose);
    std::vector<double> errors(lengths.size());
    for (size_t i = 0; i < lengths.size(); ++i) {
        errors[i] = chain_length_error(scene.drives[i], lengths[i]);
    }
    try {
        return propagate_error(scene, pose, errors).worst_case_norm;
    } catch (const SingularJacobian&) {
        // Reachable but past the accuracy condition threshold; report unbounded.
        return std::numeric_limits<double>::infinity();
    }
}

ErrorMap run_error_map(const Scene& scene, double grid_resolution, int jobs,
                       bool parallel) {
    ErrorMap map;
    const double sizes[3] = {scene.room.size_x, scene.room.size_y, scene.room.size_z};
    for (int axis = 0; axis < 3; ++axis) {
        map.grid_dims[axis] =
            std::max(1, static_cast<int>(std::ceil(sizes[axis] / grid_resolution)));
        map.cell_size[axis] = sizes[axis] / map.grid_dims[axis];
    }
    const long long total = static_cast<long long>(map.grid_dims[0]) *
                            map.grid_dims[1] * map.grid_dims[2];
    map.worst_case.assign(static_cast<size_t>(total),
                          std::numeric_limits<double>::quiet_NaN());

    const int ny = map.grid_dims[1];
    const int nz = map.grid_dims[2];
    auto evaluate = [&](long long flat) {
        const int ix = static_cast<int>(flat / (ny * nz));
        const int iy = static_cast<int>((flat / nz) % ny);
        const int iz = static_cast<int>(flat % nz);
        const Vec3 center = map.cell_center(ix, iy, iz);
        if (is_reachable(scene, center).reachable) {
            map.worst_case[static_cast<size_t>(flat)] = cell_worst_case(scene, center);
        }
    };

    if (parallel) {
        const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
        for (long long flat = 0; flat < total; ++flat) evaluate(flat);
    } else {
        for (long long flat = 0; flat < total; ++flat) evaluate(flat);
    }
    return map;
}

}  // namespace

double chain_length_error(const ChainDrive& drive, double length) {
    return drive.error_coefficient * length;
}

ErrorEstimate propagate_error(const Scene& scene, const Pose& pose,
                              const std::vector<double>& chain_errors) {
    const Jacobian jac = jacobian(scene, pose);
    const int n = static_cast<int>(jac.rows());

    ErrorEstimate est;
    est.chain_errors = chain_errors;

    Eigen::VectorXd dl(n);
    for (int i = 0; i < n; ++i) dl(i) = chain_errors[static_cast<size_t>(i)];
    est.position_error = solve_jacobian(jac, dl);

    // Per-chain contribution columns c_i = solve(J, e_i dL_i); the worst case
    // is the largest |sum s_i c_i| over sign vectors s. Negating all signs
    // mirrors dp, so fixing s_0 = +1 halves the enumeration.
    std::vector<Vec3> columns(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
        unit(i) = dl(i);
        columns[static_cast<size_t>(i)] = solve_jacobian(jac, unit);
    }
    double worst = 0.0;
    const unsigned combos = 1u << (n - 1);
    for (unsigned bits = 0; bits < combos; ++bits) {
        Vec3 dp = columns[0];
        for (int i = 1; i < n; ++i) {
            dp += (bits >> (i - 1)) & 1u ? -columns[static_cast<size_t>(i)]
                                         : columns[static_cast<size_t>(i)];
        }
        worst = std::max(worst, dp.norm());
    }
    est.worst_case_norm = std::max(worst, est.position_error.norm());
    return est;
}

ErrorMap error_map(const Scene& scene, double grid_resolution, int jobs) {
    return run_error_map(scene, grid_resolution, jobs, true);
}

ErrorMap error_map_serial(const Scene& scene, double grid_resolution) {
    return run_error_map(scene, grid_resolution, 0, false);
}

}  // namespace chainsim
