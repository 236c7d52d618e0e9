// Copyright 2026 The pathkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PATHKIT_GEOMETRY_HPP_
#define PATHKIT_GEOMETRY_HPP_

#include <cmath>

namespace pathkit {

/// 3D point/vector in meters. x is east, y is north, z is up.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

inline double norm(const Vec3& v) {
  return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Compass bearing of the horizontal projection of `to - from`:
/// 0 along +y, increasing clockwise (so +x is pi/2). Range (-pi, pi].
/// Purely vertical displacements have no defined bearing; callers treat
/// them separately (see baselines).
inline double bearing_rad(const Vec3& from, const Vec3& to) {
  return std::atan2(to.x - from.x, to.y - from.y);
}

/// Absolute angular difference of two angles, folded into [0, pi].
inline double angle_diff(double a, double b) {
  double d = std::fmod(std::fabs(a - b), 2.0 * M_PI);
  return d > M_PI ? 2.0 * M_PI - d : d;
}

}  // namespace pathkit

#endif  // PATHKIT_GEOMETRY_HPP_
