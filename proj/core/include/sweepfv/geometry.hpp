#pragma once

#include <array>
#include <cmath>

namespace sweepfv {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// A 4-vector of conservative quantities (rho, rho*u, rho*v, E).
struct Vec4 {
  std::array<double, 4> v{0.0, 0.0, 0.0, 0.0};

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  Vec4& operator+=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vec4& operator*=(double s) {
    for (int i = 0; i < 4; ++i) v[i] *= s;
    return *this;
  }
  friend Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
  friend Vec4 operator*(double s, Vec4 a) { return a *= s; }
  friend Vec4 operator*(Vec4 a, double s) { return a *= s; }
  friend bool operator==(const Vec4& a, const Vec4& b) { return a.v == b.v; }
};

using State = Vec4;

}  // namespace sweepfv
