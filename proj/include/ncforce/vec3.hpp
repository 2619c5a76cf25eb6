#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace ncforce {

using cdouble = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(Vec3 o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(Vec3 o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
};

constexpr Vec3 operator*(double s, Vec3 v) { return v * s; }

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline bool is_finite(Vec3 v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

struct CVec3 {
    cdouble x{}, y{}, z{};

    cdouble operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 real() const { return {x.real(), y.real(), z.real()}; }
    Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }
    double norm() const { return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z)); }
};

inline CVec3 operator*(cdouble s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }

// Real 3x3 tensor, row-major.
struct Mat3 {
    std::array<double, 9> m{};

    double operator()(int i, int j) const { return m[3 * i + j]; }
    double& operator()(int i, int j) { return m[3 * i + j]; }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }

    static Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }
    static Mat3 outer(Vec3 a, Vec3 b) {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
        return r;
    }

    double max_abs() const {
        double v = 0.0;
        for (double e : m) v = std::max(v, std::abs(e));
        return v;
    }
};

inline Mat3 operator*(double s, const Mat3& a) { return a * s; }

inline Vec3 operator*(const Mat3& a, Vec3 v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
            a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

// Complex 3x3 tensor, row-major.
struct CMat3 {
    std::array<cdouble, 9> m{};

    cdouble operator()(int i, int j) const { return m[3 * i + j]; }
    cdouble& operator()(int i, int j) { return m[3 * i + j]; }

    CMat3 operator+(const CMat3& o) const {
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    CMat3 operator-(const CMat3& o) const {
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    CMat3 operator*(cdouble s) const {
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }

    Mat3 real() const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i].real();
        return r;
    }
    Mat3 imag() const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i].imag();
        return r;
    }

    double max_abs() const {
        double v = 0.0;
        for (cdouble e : m) v = std::max(v, std::abs(e));
        return v;
    }
    // Largest |m_ij - m_ji| over all entry pairs.
    double max_asymmetry() const {
        double v = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                v = std::max(v, std::abs((*this)(i, j) - (*this)(j, i)));
        return v;
    }

    static CMat3 from(const Mat3& re, const Mat3& im) {
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = {re.m[i], im.m[i]};
        return r;
    }
    static CMat3 from_real(const Mat3& re) {
        CMat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = {re.m[i], 0.0};
        return r;
    }
};

inline CMat3 operator*(cdouble s, const CMat3& a) { return a * s; }

inline CVec3 operator*(const CMat3& a, Vec3 v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
            a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

inline cdouble contract(Vec3 a, const CMat3& t, Vec3 b) {
    cdouble s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a[i] * t(i, j) * b[j];
    return s;
}

inline double contract(Vec3 a, const Mat3& t, Vec3 b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a[i] * t(i, j) * b[j];
    return s;
}

} // namespace ncforce
