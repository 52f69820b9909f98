#pragma once

#include <Eigen/Dense>
#include <span>

#include "scanplan/errors.hpp"

namespace scanplan {

using Vec3 = Eigen::Vector3d;
using Mat34 = Eigen::Matrix<double, 3, 4>;

/// Sub-pixel image coordinates, origin top-left, u rightward, v downward.
struct Pixel {
    double u = 0.0;
    double v = 0.0;
};

/// Half-line in world coordinates. `dir` is unit length; parameter t >= 0.
struct Ray {
    Vec3 origin;
    Vec3 dir;
};

/// Plane swept by the line laser. offset == normal.dot(anchor).
struct LaserPlane {
    Vec3 anchor;
    Vec3 normal;  // unit
    double offset = 0.0;
};

LaserPlane make_laser_plane(const Vec3& anchor, const Vec3& normal);

/// Brown radial-tangential coefficients, applied in image coordinates
/// normalized by the image center and half-diagonal.
struct Distortion {
    double k1 = 0.0, k2 = 0.0, p1 = 0.0, p2 = 0.0;
    bool any() const { return k1 != 0.0 || k2 != 0.0 || p1 != 0.0 || p2 != 0.0; }
};

/// Calibrated camera: full 3x4 projection (world meters -> homogeneous pixels).
/// Construction validates rank 3 and a finite camera center.
class CameraModel {
public:
    CameraModel(const Mat34& projection, int width, int height,
                const Distortion& distortion = {});

    const Mat34& projection() const { return projection_; }
    int width() const { return width_; }
    int height() const { return height_; }
    const Distortion& distortion() const { return distortion_; }
    const Vec3& center() const { return center_; }

    /// Inverse of the left 3x3 block; used for backprojection.
    const Eigen::Matrix3d& inv_m() const { return inv_m_; }

    /// Half-diagonal scale used by the distortion model.
    double distortion_scale() const;

private:
    Mat34 projection_;
    int width_;
    int height_;
    Distortion distortion_;
    Vec3 center_;
    Eigen::Matrix3d inv_m_;
};

/// Pinhole projection (Eq. P_x = H * P), distortion applied after the
/// perspective division when coefficients are nonzero.
Pixel project(const CameraModel& camera, const Vec3& point);

/// Ray through the camera center that reprojects onto `pixel`.
/// The pixel is assumed undistorted (apply undistort() first if needed).
Ray backproject(const CameraModel& camera, const Pixel& pixel);

/// Forward Brown model: ideal pixel -> distorted pixel.
Pixel distort(const CameraModel& camera, const Pixel& pixel);

/// Inverse of distort(), fixed-point iteration to 1e-8 px.
Pixel undistort(const CameraModel& camera, const Pixel& pixel);

/// Orthogonal least-squares plane through >= 3 non-collinear points.
/// The normal is oriented so that normal.dot(reference) >= 0 (reference
/// conventionally points toward the camera side).
LaserPlane calibrate_laser_plane(std::span<const Vec3> points,
                                 const Vec3& reference = Vec3(1, 0, 0));

enum class IntersectStatus { Ok, Parallel, Behind };

/// Closed-form ray/plane intersection; non-throwing variant.
IntersectStatus try_intersect(const Ray& ray, const LaserPlane& plane, Vec3& out);

/// Throwing variant: ParallelRay when the denominator vanishes,
/// BehindCamera when t < 0.
Vec3 intersect_ray_plane(const Ray& ray, const LaserPlane& plane);

} // namespace scanplan
