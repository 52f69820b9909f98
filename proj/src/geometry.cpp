#include "scanplan/geometry.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace scanplan {

LaserPlane make_laser_plane(const Vec3& anchor, const Vec3& normal) {
    const double len = normal.norm();
    if (len < 1e-12) throw CollinearPoints("laser plane normal has zero length");
    LaserPlane plane;
    plane.anchor = anchor;
    plane.normal = normal / len;
    plane.offset = plane.normal.dot(anchor);
    return plane;
}

CameraModel::CameraModel(const Mat34& projection, int width, int height,
                         const Distortion& distortion)
    : projection_(projection), width_(width), height_(height), distortion_(distortion) {
    if (width_ <= 0 || height_ <= 0)
        throw DegenerateCamera("image dimensions must be positive");
    if (!projection_.allFinite())
        throw DegenerateCamera("projection matrix has non-finite entries");

    Eigen::JacobiSVD<Mat34> svd(projection_);
    const auto& sv = svd.singularValues();
    if (sv(2) <= 1e-12 * sv(0))
        throw DegenerateCamera("projection matrix rank < 3");

    const Eigen::Matrix3d m = projection_.leftCols<3>();
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
    if (!lu.isInvertible())
        throw DegenerateCamera("camera center is not finite");
    inv_m_ = lu.inverse();
    center_ = -inv_m_ * projection_.col(3);
}

double CameraModel::distortion_scale() const {
    return 0.5 * std::hypot(static_cast<double>(width_), static_cast<double>(height_));
}

namespace {

// Forward Brown model in normalized coordinates.
inline void brown_forward(const Distortion& d, double x, double y,
                          double& xd, double& yd) {
    const double r2 = x * x + y * y;
    const double radial = 1.0 + d.k1 * r2 + d.k2 * r2 * r2;
    xd = x * radial + 2.0 * d.p1 * x * y + d.p2 * (r2 + 2.0 * x * x);
    yd = y * radial + d.p1 * (r2 + 2.0 * y * y) + 2.0 * d.p2 * x * y;
}

} // namespace

Pixel distort(const CameraModel& camera, const Pixel& pixel) {
    if (!camera.distortion().any()) return pixel;
    const double cx = camera.width() / 2.0;
    const double cy = camera.height() / 2.0;
    const double s = camera.distortion_scale();
    double xd = 0.0, yd = 0.0;
    brown_forward(camera.distortion(), (pixel.u - cx) / s, (pixel.v - cy) / s, xd, yd);
    return {cx + s * xd, cy + s * yd};
}

Pixel undistort(const CameraModel& camera, const Pixel& pixel) {
    const Distortion& d = camera.distortion();
    if (!d.any()) return pixel;
    const double cx = camera.width() / 2.0;
    const double cy = camera.height() / 2.0;
    const double s = camera.distortion_scale();
    const double xd = (pixel.u - cx) / s;
    const double yd = (pixel.v - cy) / s;
    const double tol = 1e-8 / s;  // 1e-8 px expressed in normalized units

    double x = xd, y = yd;
    for (int it = 0; it < 50; ++it) {
        double fx = 0.0, fy = 0.0;
        brown_forward(d, x, y, fx, fy);
        const double nx = x + (xd - fx);
        const double ny = y + (yd - fy);
        const double step = std::hypot(nx - x, ny - y);
        x = nx;
        y = ny;
        if (!std::isfinite(x) || !std::isfinite(y))
            throw NoConvergence("undistort diverged; coefficients outside model validity");
        if (step < tol) return {cx + s * x, cy + s * y};
    }
    throw NoConvergence("undistort did not converge in 50 iterations");
}

Pixel project(const CameraModel& camera, const Vec3& point) {
    const Eigen::Vector4d hp(point.x(), point.y(), point.z(), 1.0);
    const Vec3 img = camera.projection() * hp;
    if (std::abs(img(2)) < 1e-12)
        throw DegenerateProjection("point on the camera principal plane");
    Pixel px{img(0) / img(2), img(1) / img(2)};
    if (camera.distortion().any()) px = distort(camera, px);
    return px;
}

Ray backproject(const CameraModel& camera, const Pixel& pixel) {
    // dir = M^-1 * (u, v, 1): the unique direction with positive projective
    // depth mapping onto the pixel (H * [C + t*dir; 1] = t * M * dir).
    const Vec3 dir = camera.inv_m() * Vec3(pixel.u, pixel.v, 1.0);
    const double len = dir.norm();
    if (len < 1e-15 || !dir.allFinite())
        throw DegenerateCamera("backprojection direction degenerate");
    return Ray{camera.center(), dir / len};
}

LaserPlane calibrate_laser_plane(std::span<const Vec3> points, const Vec3& reference) {
    if (points.size() < 3)
        throw TooFewPoints("laser plane calibration needs >= 3 points");

    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : points) centroid += p;
    centroid /= static_cast<double>(points.size());

    Eigen::MatrixXd a(points.size(), 3);
    for (size_t i = 0; i < points.size(); ++i)
        a.row(i) = (points[i] - centroid).transpose();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(1) / sv(0) <= 1e-9)
        throw CollinearPoints("laser calibration points are collinear");

    Vec3 normal = svd.matrixV().col(2);
    if (normal.dot(reference) < 0.0) normal = -normal;
    return make_laser_plane(centroid, normal);
}

IntersectStatus try_intersect(const Ray& ray, const LaserPlane& plane, Vec3& out) {
    const double denom = plane.normal.dot(ray.dir);
    if (std::abs(denom) <= 1e-9) return IntersectStatus::Parallel;
    const double t = (plane.offset - plane.normal.dot(ray.origin)) / denom;
    if (t < 0.0) return IntersectStatus::Behind;
    out = ray.origin + t * ray.dir;
    return IntersectStatus::Ok;
}

Vec3 intersect_ray_plane(const Ray& ray, const LaserPlane& plane) {
    Vec3 out;
    switch (try_intersect(ray, plane, out)) {
        case IntersectStatus::Ok:
            return out;
        case IntersectStatus::Parallel:
            throw ParallelRay("ray parallel to the laser plane");
        case IntersectStatus::Behind:
            throw BehindCamera("intersection behind the camera (t < 0)");
    }
    throw Error("unreachable");
}

} // namespace scanplan
