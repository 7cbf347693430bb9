#ifndef CHAINSIM_STATICS_HPP
#define CHAINSIM_STATICS_HPP

#include <vector>

#include "chainsim/scene.hpp"

namespace chainsim {

/// Axial chain forces balancing the loaded platform at one pose.
/// Sign convention: positive = tension (chain pulls the platform toward its
/// anchor), negative = compression (rigid chain pushes).
struct ForceSolution {
    std::vector<double> axial_forces;  // N, one per chain
    double residual = 0.0;             // |sum_i f_i u_i + W|, N
    bool feasible = false;             // every chain inside its force limits
    std::vector<double> margins;       // remaining capacity per chain, N (negative = over)
};

/// Equilibrium solve sum_i f_i u_i = -W with W the total weight vector and
/// u_i the unit vector from attachment toward anchor. N = 3 gives the unique
/// solution; N > 3 the minimum-Euclidean-norm solution of the underdetermined
/// system. Throws SingularGeometry when the chain directions are degenerate
/// (condition number above 1e12).
ForceSolution static_forces(const Scene& scene, const Pose& pose);

struct FeasibilityCheck {
    bool feasible = false;
    int limiting_chain = -1;  // first violating chain, or most loaded when feasible
    double excess = 0.0;      // N beyond the violated limit (0 when feasible)
};

/// True iff static_forces succeeds and every force lies within
/// [-compression_limit, +tension_limit]. Propagates SingularGeometry.
FeasibilityCheck force_feasible(const Scene& scene, const Pose& pose);

}  // namespace chainsim

#endif
