#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "spinevol/core.hpp"

namespace spinevol {

struct Quat {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    static Quat identity() { return {}; }

    static Quat from_axis_angle(const Vec3& axis, double angle_rad) {
        double n = axis.norm();
        if (n == 0.0) throw InvalidInput("zero rotation axis");
        double h = 0.5 * angle_rad;
        double s = std::sin(h) / n;
        return {std::cos(h), axis.x * s, axis.y * s, axis.z * s};
    }

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    Quat normalized() const {
        double n = norm();
        if (n == 0.0) throw InvalidInput("zero quaternion");
        return {w / n, x / n, y / n, z / n};
    }

    Quat conjugate() const { return {w, -x, -y, -z}; }

    Quat operator*(const Quat& q) const {
        return {w * q.w - x * q.x - y * q.y - z * q.z,
                w * q.x + x * q.w + y * q.z - z * q.y,
                w * q.y - x * q.z + y * q.w + z * q.x,
                w * q.z + x * q.y - y * q.x + z * q.w};
    }

    double dot(const Quat& q) const { return w * q.w + x * q.x + y * q.y + z * q.z; }

    Vec3 rotate(const Vec3& v) const {
        // v' = v + 2 u x (u x v + w v), u = (x,y,z)
        Vec3 u{x, y, z};
        Vec3 t = u.cross(v) * 2.0;
        return v + t * w + u.cross(t);
    }

    std::array<double, 9> to_matrix3() const {
        double xx = x * x, yy = y * y, zz = z * z;
        double xy = x * y, xz = x * z, yz = y * z;
        double wx = w * x, wy = w * y, wz = w * z;
        return {1 - 2 * (yy + zz), 2 * (xy - wz),     2 * (xz + wy),
                2 * (xy + wz),     1 - 2 * (xx + zz), 2 * (yz - wx),
                2 * (xz - wy),     2 * (yz + wx),     1 - 2 * (xx + yy)};
    }

    // Shepperd's method, row-major 3x3 input.
    static Quat from_matrix3(const std::array<double, 9>& m) {
        double tr = m[0] + m[4] + m[8];
        Quat q;
        if (tr > 0.0) {
            double s = std::sqrt(tr + 1.0) * 2.0;
            q = {0.25 * s, (m[7] - m[5]) / s, (m[2] - m[6]) / s, (m[3] - m[1]) / s};
        } else if (m[0] > m[4] && m[0] > m[8]) {
            double s = std::sqrt(1.0 + m[0] - m[4] - m[8]) * 2.0;
            q = {(m[7] - m[5]) / s, 0.25 * s, (m[1] + m[3]) / s, (m[2] + m[6]) / s};
        } else if (m[4] > m[8]) {
            double s = std::sqrt(1.0 + m[4] - m[0] - m[8]) * 2.0;
            q = {(m[2] - m[6]) / s, (m[1] + m[3]) / s, 0.25 * s, (m[5] + m[7]) / s};
        } else {
            double s = std::sqrt(1.0 + m[8] - m[0] - m[4]) * 2.0;
            q = {(m[3] - m[1]) / s, (m[2] + m[6]) / s, (m[5] + m[7]) / s, 0.25 * s};
        }
        return q.normalized();
    }
};

// Shortest-path spherical linear interpolation.
inline Quat slerp(const Quat& a, Quat b, double t) {
    double d = a.dot(b);
    if (d < 0.0) {
        b = {-b.w, -b.x, -b.y, -b.z};
        d = -d;
    }
    if (d > 0.9995) {
        Quat q{a.w + t * (b.w - a.w), a.x + t * (b.x - a.x), a.y + t * (b.y - a.y),
               a.z + t * (b.z - a.z)};
        return q.normalized();
    }
    double theta = std::acos(std::clamp(d, -1.0, 1.0));
    double s = std::sin(theta);
    double wa = std::sin((1.0 - t) * theta) / s;
    double wb = std::sin(t * theta) / s;
    Quat q{wa * a.w + wb * b.w, wa * a.x + wb * b.x, wa * a.y + wb * b.y,
           wa * a.z + wb * b.z};
    return q.normalized();
}

// SE(3): p' = R p + t. Rotation kept as a unit quaternion; renormalized after
// every compose/invert so long chains do not drift.
struct RigidTransform {
    Quat rotation;
    Vec3 translation;

    static RigidTransform identity() { return {}; }

    static RigidTransform translate(double x, double y, double z) {
        return {Quat::identity(), {x, y, z}};
    }

    static RigidTransform rotate_axis(const Vec3& axis, double angle_rad) {
        return {Quat::from_axis_angle(axis, angle_rad), {0, 0, 0}};
    }

    static RigidTransform rot_x(double rad) { return rotate_axis({1, 0, 0}, rad); }
    static RigidTransform rot_y(double rad) { return rotate_axis({0, 1, 0}, rad); }
    static RigidTransform rot_z(double rad) { return rotate_axis({0, 0, 1}, rad); }

    Vec3 apply(const Vec3& p) const { return rotation.rotate(p) + translation; }

    // Row-major 4x4 homogeneous matrix (file-format boundary form).
    std::array<double, 16> to_matrix4() const {
        auto r = rotation.to_matrix3();
        return {r[0], r[1], r[2], translation.x,
                r[3], r[4], r[5], translation.y,
                r[6], r[7], r[8], translation.z,
                0,    0,    0,    1};
    }

    static RigidTransform from_matrix4(const std::array<double, 16>& m) {
        if (std::abs(m[12]) > 1e-9 || std::abs(m[13]) > 1e-9 || std::abs(m[14]) > 1e-9 ||
            std::abs(m[15] - 1.0) > 1e-9)
            throw InvalidInput("bottom row of homogeneous matrix must be 0 0 0 1");
        Quat q = Quat::from_matrix3({m[0], m[1], m[2], m[4], m[5], m[6], m[8], m[9], m[10]});
        return {q, {m[3], m[7], m[11]}};
    }
};

inline RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
    return {(a.rotation * b.rotation).normalized(), a.apply(b.translation)};
}

inline RigidTransform invert(const RigidTransform& t) {
    Quat qi = t.rotation.conjugate().normalized();
    return {qi, -qi.rotate(t.translation)};
}

struct TimedPose {
    double t_ms = 0.0;
    RigidTransform transform;  // transducer -> world
};

struct CropRect {
    int x = 0, y = 0, w = 0, h = 0;
};

struct ImageCalibration {
    CropRect crop_rect;
    double scale_x_mm = 1.0;  // mm per pixel, lateral
    double scale_y_mm = 1.0;  // mm per pixel, axial
    RigidTransform image_to_transducer;
    double latency_ms = 0.0;  // pose stream lag behind the frame stream

    void validate() const {
        if (scale_x_mm <= 0.0 || scale_y_mm <= 0.0)
            throw InvalidInput("calibration scales must be positive");
        if (crop_rect.w <= 0 || crop_rect.h <= 0)
            throw InvalidInput("calibration crop_rect must be non-empty");
    }

    double axial_extent_mm() const { return crop_rect.h * scale_y_mm; }
    double lateral_extent_mm() const { return crop_rect.w * scale_x_mm; }
};

// (col,row) in the cropped B-mode image -> mm position in the world frame.
inline Vec3 pixel_to_world(double col, double row, const ImageCalibration& calib,
                           const RigidTransform& pose) {
    if (col < 0 || row < 0 || col >= calib.crop_rect.w || row >= calib.crop_rect.h)
        throw InvalidInput("pixel outside B-mode image bounds");
    Vec3 p{col * calib.scale_x_mm, row * calib.scale_y_mm, 0.0};
    return pose.apply(calib.image_to_transducer.apply(p));
}

inline Vec3 pixel_to_world(double col, double row, const ImageCalibration& calib,
                           const TimedPose& pose) {
    return pixel_to_world(col, row, calib, pose.transform);
}

// Linear translation / slerp rotation between the bracketing samples.
// No extrapolation: t must lie within the sampled span.
inline RigidTransform interpolate_pose(std::span<const TimedPose> poses, double t_ms) {
    if (poses.empty()) throw InvalidInput("empty pose sequence");
    if (t_ms < poses.front().t_ms || t_ms > poses.back().t_ms)
        throw InvalidInput("pose interpolation time outside sampled range");
    auto it = std::lower_bound(poses.begin(), poses.end(), t_ms,
                               [](const TimedPose& p, double t) { return p.t_ms < t; });
    if (it->t_ms == t_ms) return it->transform;
    const TimedPose& hi = *it;
    const TimedPose& lo = *(it - 1);
    double u = (t_ms - lo.t_ms) / (hi.t_ms - lo.t_ms);
    RigidTransform out;
    out.translation = lo.transform.translation +
                      (hi.transform.translation - lo.transform.translation) * u;
    out.rotation = slerp(lo.transform.rotation, hi.transform.rotation, u);
    return out;
}

}  // namespace spinevol
