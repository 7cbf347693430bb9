#ifndef CHAINSIM_KINEMATICS_HPP
#define CHAINSIM_KINEMATICS_HPP

#include <Eigen/Core>

#include "chainsim/scene.hpp"

namespace chainsim {

/// Row i is dL_i/dp = (p + r_i - a_i)/L_i, a unit vector for L_i > 0.
using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// Chain lengths holding the platform reference point at `pose`:
/// L_i = |a_i - (p + r_i)|. Exact, total on finite input; does not enforce
/// per-drive length bounds (reachability is the workspace module's job).
ChainLengths inverse_kinematics(const Scene& scene, const Pose& pose);

/// Closed-form three-sphere trilateration on the effective anchors. Returns
/// the intersection on the lower side of the effective-anchor plane (smaller
/// world z of the two mirror solutions). Requires exactly 3 drives.
/// Throws NoIntersection when the spheres miss (squared plane offset below
/// -1e-9 m^2) and AmbiguousSolution when the mirror solutions have equal z
/// within 1e-12 and cannot be told apart.
Pose forward_kinematics_3(const Scene& scene, const ChainLengths& lengths);

/// Damped least-squares forward kinematics for N >= 3 chains: minimizes
/// sum_i (|a_i' - p| - L_i)^2 from `initial_guess`. Converges to the local
/// minimizer of the seeded basin; seed below the effective-anchor plane to
/// get the hanging solution. Throws NoConvergence after 100 iterations and
/// DivergedGuess when iterates leave a 10x room bounding box.
Pose forward_kinematics_lsq(const Scene& scene, const ChainLengths& lengths,
                            const Pose& initial_guess);

/// Kinematic Jacobian at `pose`. Throws DegeneratePose when some chain length
/// is <= 1e-9 m.
Jacobian jacobian(const Scene& scene, const Pose& pose);

/// Angle in [0, pi] between chain `chain_index`'s direction (attachment
/// toward anchor) and the world vertical. Throws DegeneratePose as above.
double gimbal_angle(const Scene& scene, const Pose& pose, int chain_index);

}  // namespace chainsim

#endif
