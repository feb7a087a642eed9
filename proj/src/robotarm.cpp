#include "plc/robotarm.hpp"

#include <cmath>

namespace plc {

namespace {

Eigen::Isometry3d make_transform(const std::array<double, 3>& xyz,
                                 const std::array<double, 3>& rpy) {
    Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
    t.linear() = (Eigen::AngleAxisd(rpy[2], Eigen::Vector3d::UnitZ()) *
                  Eigen::AngleAxisd(rpy[1], Eigen::Vector3d::UnitY()) *
                  Eigen::AngleAxisd(rpy[0], Eigen::Vector3d::UnitX()))
                     .toRotationMatrix();
    t.translation() = Eigen::Vector3d(xyz[0], xyz[1], xyz[2]);
    return t;
}

}  // namespace

ArmChain build_chain(const ArmSpec& spec) {
    ArmChain chain;
    chain.base = make_transform(spec.base_xyz, spec.base_rpy);
    for (const auto& l : spec.links) {
        ArmLink link;
        link.axis = Eigen::Vector3d(l.axis[0], l.axis[1], l.axis[2]);
        const double n = link.axis.norm();
        if (n <= kGeomEps) throw DegenerateInput("build_chain: zero joint axis");
        link.axis /= n;
        link.fixed = make_transform(l.offset, l.rpy);
        chain.links.push_back(link);
    }
    if (!spec.virtual_points.empty()) {
        for (const auto& vp : spec.virtual_points)
            chain.virtual_points.emplace_back(
                vp.link, Eigen::Vector3d(vp.offset[0], vp.offset[1], vp.offset[2]));
    } else {
        // Default: midpoint of each link (half-way back toward the parent
        // joint) plus two end-effector corner points.
        for (std::size_t i = 0; i < chain.links.size(); ++i) {
            const Eigen::Vector3d mid = -0.5 * chain.links[i].fixed.translation();
            chain.virtual_points.emplace_back(static_cast<int>(i), mid);
        }
        const int last = static_cast<int>(chain.links.size()) - 1;
        chain.virtual_points.emplace_back(last, Eigen::Vector3d(0.0, 0.05, 0.0));
        chain.virtual_points.emplace_back(last, Eigen::Vector3d(0.0, -0.05, 0.0));
    }
    return chain;
}

std::vector<Eigen::Vector3d> forward_kinematics(const ArmChain& chain,
                                                const JointState& state) {
    if (chain.links.empty()) throw DegenerateInput("forward_kinematics: empty chain");
    if (state.angles.size() != chain.links.size())
        throw DimensionMismatch("forward_kinematics: state length " +
                                std::to_string(state.angles.size()) + " != link count " +
                                std::to_string(chain.links.size()));

    std::vector<Eigen::Isometry3d> frames;
    frames.reserve(chain.links.size());
    Eigen::Isometry3d t = chain.base;
    for (std::size_t i = 0; i < chain.links.size(); ++i) {
        t = t * Eigen::AngleAxisd(state.angles[i], chain.links[i].axis) *
            chain.links[i].fixed;
        frames.push_back(t);
    }

    std::vector<Eigen::Vector3d> out;
    out.reserve(frames.size() + chain.virtual_points.size());
    for (const auto& f : frames) out.push_back(f.translation());
    for (const auto& [link, offset] : chain.virtual_points) {
        if (link < 0 || link >= static_cast<int>(frames.size()))
            throw DimensionMismatch("forward_kinematics: virtual point link index");
        out.push_back(frames[static_cast<std::size_t>(link)] * offset);
    }
    return out;
}

std::vector<Point2> project_top_down(const std::vector<Eigen::Vector3d>& points,
                                     const Pose2D& plc_pose) {
    if (points.empty()) throw DegenerateInput("project_top_down: empty point list");
    const double c = std::cos(-plc_pose.theta), s = std::sin(-plc_pose.theta);
    std::vector<Point2> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        const double dx = p.x() - plc_pose.x;
        const double dy = p.y() - plc_pose.y;
        out.push_back({c * dx - s * dy, s * dx + c * dy});
    }
    return out;
}

JointState sample_trajectory(const std::vector<std::pair<double, JointState>>& script,
                             double t) {
    if (script.empty()) throw DegenerateInput("sample_trajectory: empty script");
    if (t <= script.front().first) return script.front().second;
    if (t >= script.back().first) return script.back().second;
    for (std::size_t i = 1; i < script.size(); ++i) {
        if (t <= script[i].first) {
            const auto& [ta, a] = script[i - 1];
            const auto& [tb, b] = script[i];
            const double u = (t - ta) / (tb - ta);
            JointState out;
            out.timestamp = t;
            out.angles.resize(a.angles.size());
            for (std::size_t k = 0; k < a.angles.size(); ++k)
                out.angles[k] = a.angles[k] + u * (b.angles[k] - a.angles[k]);
            return out;
        }
    }
    return script.back().second;
}

JointState arm_state_at(const ArmSpec& spec, double t) {
    if (spec.trajectory.empty()) {
        JointState s;
        s.angles.assign(spec.links.size(), 0.0);
        s.timestamp = t;
        return s;
    }
    std::vector<std::pair<double, JointState>> script;
    script.reserve(spec.trajectory.size());
    for (const auto& kf : spec.trajectory)
        script.emplace_back(kf.t, JointState{kf.angles, kf.t});
    return sample_trajectory(script, t);
}

}  // namespace plc
