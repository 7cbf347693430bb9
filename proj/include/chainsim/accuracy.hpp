#ifndef CHAINSIM_ACCURACY_HPP
#define CHAINSIM_ACCURACY_HPP

#include <array>
#include <vector>

#include "chainsim/scene.hpp"

namespace chainsim {

struct ErrorEstimate {
    std::vector<double> chain_errors;   // dL_i, m
    Vec3 position_error = Vec3::Zero();  // dp for the given dL (signed), m
    double worst_case_norm = 0.0;        // max |dp| over all sign assignments of dL
};

/// Cumulative joint-play error of one deployed chain:
/// error_coefficient * length. Linear because deployed joint count grows
/// linearly with deployed length.
double chain_length_error(const ChainDrive& drive, double length);

/// First-order propagation of chain-length errors to platform position
/// through the kinematic Jacobian: solves J dp = dL (N = 3 exactly, N > 3 in
/// the least-squares sense). worst_case_norm enumerates all 2^N sign
/// assignments of dL (N <= 8). Throws SingularJacobian at kinematic
/// singularities (condition number above 1e12).
ErrorEstimate propagate_error(const Scene& scene, const Pose& pose,
                              const std::vector<double>& chain_errors);

/// Worst-case position error field over the reachable workspace, sampled at
/// cell centers of a grid with cell edges at most `grid_resolution` long.
/// Unreachable cells carry NaN. Row-major order: x outermost, z innermost.
struct ErrorMap {
    std::array<int, 3> grid_dims{};
    std::array<double, 3> cell_size{};
    std::vector<double> worst_case;  // dims[0]*dims[1]*dims[2], NaN = unreachable

    Vec3 cell_center(int ix, int iy, int iz) const {
        return Vec3((ix + 0.5) * cell_size[0], (iy + 0.5) * cell_size[1],
                    (iz + 0.5) * cell_size[2]);
    }
    size_t flat_index(int ix, int iy, int iz) const {
        return (static_cast<size_t>(ix) * grid_dims[1] + iy) * grid_dims[2] + iz;
    }
};

/// OpenMP-parallel sweep; output independent of `jobs` (0 = all hardware
/// threads).
ErrorMap error_map(const Scene& scene, double grid_resolution, int jobs = 0);

/// Single-threaded reference implementation kept for testing; must produce
/// bit-identical output.
ErrorMap error_map_serial(const Scene& scene, double grid_resolution);

}  // namespace chainsim

#endif
