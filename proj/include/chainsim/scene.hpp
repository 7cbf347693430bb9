#ifndef CHAINSIM_SCENE_HPP
#define CHAINSIM_SCENE_HPP

#include <Eigen/Core>
#include <filesystem>
#include <vector>

#include "chainsim/errors.hpp"

namespace chainsim {

using Vec3 = Eigen::Vector3d;

// World frame: z up, floor at z = 0, room box [0,size_x]x[0,size_y]x[0,size_z].
// Lengths in meters, forces in newtons, angles in radians throughout.

constexpr double kDefaultErrorCoefficient = 2.0e-4;  // 1 mm of play per 5 m deployed
constexpr double kDefaultGravity = 9.80665;
constexpr double kDefaultClearance = 0.05;
constexpr double kHalfPi = 1.5707963267948966;

struct Room {
    double size_x = 0.0;
    double size_y = 0.0;
    double size_z = 0.0;
};

/// One ceiling-mounted rigid-chain drive: folded magazine, sprocket, and the
/// straight deployed chain segment leaving the housing at `anchor`.
struct ChainDrive {
    Vec3 anchor = Vec3::Zero();       // chain exit point in world frame
    double length_min = 0.0;          // minimum deployable extension
    double length_max = 0.0;          // maximum deployable extension
    double stored_length = 0.0;       // total chain in the magazine
    double pitch = 0.0;               // link pitch (sprocket step)
    double resolution = 0.0;          // smallest commandable length increment
    double speed_max = 0.0;           // deployment speed limit, m/s
    double accel_max = 0.0;           // deployment acceleration limit, m/s^2
    double error_coefficient = kDefaultErrorCoefficient;  // joint play per unit length
    double tension_limit = 0.0;       // max axial pull, N
    double compression_limit = 0.0;   // max axial push before buckling, N
    double gimbal_cone_half_angle = kHalfPi;  // max chain-to-vertical angle at the joint
};

struct Platform {
    std::vector<Vec3> attachment_offsets;  // world-frame offsets r_i, one per drive
    double mass = 0.0;                     // structure mass, kg
    double payload_mass = 0.0;             // carried equipment, kg
};

struct Scene {
    Room room;
    std::vector<ChainDrive> drives;  // 3 <= N <= 8
    Platform platform;
    double gravity = kDefaultGravity;
    double clearance = kDefaultClearance;  // min chain-to-chain distance

    int drive_count() const { return static_cast<int>(drives.size()); }

    /// Effective anchor a_i' = anchor_i - r_i. Chain i constrains the platform
    /// reference point to a sphere of radius L_i around this point.
    Vec3 effective_anchor(int i) const {
        return drives[static_cast<size_t>(i)].anchor -
               platform.attachment_offsets[static_cast<size_t>(i)];
    }

    double total_weight() const {
        return (platform.mass + platform.payload_mass) * gravity;
    }

    bool inside_room(const Vec3& p) const {
        return p.x() >= 0.0 && p.x() <= room.size_x && p.y() >= 0.0 &&
               p.y() <= room.size_y && p.z() >= 0.0 && p.z() <= room.size_z;
    }
};

/// Platform reference-point position; orientation is fixed by convention.
struct Pose {
    Vec3 position = Vec3::Zero();
};

/// Chain extensions in meters, the actuation coordinates.
using ChainLengths = std::vector<double>;

/// Checks every scene invariant and returns the scene unchanged when all hold.
/// Throws InvalidScene listing every violated constraint name, not just the
/// first. Idempotent on valid scenes.
Scene validate_scene(const Scene& raw);

/// Parses the JSON scene format (strict: unknown keys are an error), applies
/// defaults for optional fields, then validates.
Scene load_scene(const std::filesystem::path& path);

/// Writes the scene back out with every field explicit, at full round-trip
/// precision. load_scene(save_scene(s)) == s field for field.
void save_scene(const Scene& scene, const std::filesystem::path& path);

/// Field-for-field equality (exact floating-point compare).
bool scene_equal(const Scene& a, const Scene& b);

}  // namespace chainsim

#endif
