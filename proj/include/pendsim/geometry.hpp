#ifndef PENDSIM_GEOMETRY_HPP
#define PENDSIM_GEOMETRY_HPP

#include <cmath>

namespace pendsim {

/// Point in the arm-base frame (meters). z is height above the floor plane.
struct CartesianPose {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline CartesianPose operator+(const CartesianPose& a, const CartesianPose& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}

inline CartesianPose operator-(const CartesianPose& a, const CartesianPose& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

inline CartesianPose operator*(double s, const CartesianPose& p) {
    return {s * p.x, s * p.y, s * p.z};
}

inline double norm(const CartesianPose& p) {
    return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
}

inline double distance(const CartesianPose& a, const CartesianPose& b) {
    return norm(a - b);
}

}  // namespace pendsim

#endif
