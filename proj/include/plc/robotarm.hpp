#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <utility>
#include <vector>

#include "plc/geom2d.hpp"
#include "plc/layout.hpp"

namespace plc {

// One revolute joint: rotation about `axis` applied at the parent frame,
// followed by the fixed link transform to the next joint origin.
struct ArmLink {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
    Eigen::Isometry3d fixed = Eigen::Isometry3d::Identity();
};

struct ArmChain {
    Eigen::Isometry3d base = Eigen::Isometry3d::Identity();
    std::vector<ArmLink> links;
    // (link index, offset in that link's frame) for extra tracked points.
    std::vector<std::pair<int, Eigen::Vector3d>> virtual_points;
};

struct JointState {
    std::vector<double> angles;
    double timestamp = 0.0;
};

// Builds a chain from its scenario description. Unspecified virtual points
// default to the midpoint of every link.
ArmChain build_chain(const ArmSpec& spec);

// World-frame positions of every joint origin followed by every virtual
// point. Throws DimensionMismatch if the state length differs from the chain.
std::vector<Eigen::Vector3d> forward_kinematics(const ArmChain& chain,
                                                const JointState& state);

// Drops z and expresses (x, y) in the PLC's 2D frame.
std::vector<Point2> project_top_down(const std::vector<Eigen::Vector3d>& points,
                                     const Pose2D& plc_pose);

// Linear interpolation of joint angles over a keyframe script, clamped at the
// endpoints. Script times must be strictly increasing.
JointState sample_trajectory(const std::vector<std::pair<double, JointState>>& script,
                             double t);

JointState arm_state_at(const ArmSpec& spec, double t);

}  // namespace plc
