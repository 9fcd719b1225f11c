#pragma once

#include <cmath>
#include <complex>

namespace dilab
{

using cplx = std::complex<double>;

//! Minimal Cartesian 3-vector; T is double or cplx.
template<class T>
struct Vec3T
{
    T x{};
    T y{};
    T z{};

    constexpr T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3T& operator+=(const Vec3T& o)
    {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3T& operator-=(const Vec3T& o)
    {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    template<class S>
    constexpr Vec3T& operator*=(S s)
    {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
};

using Vec3 = Vec3T<double>;
using CVec3 = Vec3T<cplx>;

template<class T>
constexpr Vec3T<T> operator+(Vec3T<T> a, const Vec3T<T>& b)
{
    return a += b;
}
template<class T>
constexpr Vec3T<T> operator-(Vec3T<T> a, const Vec3T<T>& b)
{
    return a -= b;
}
template<class T>
constexpr Vec3T<T> operator-(const Vec3T<T>& a)
{
    return {-a.x, -a.y, -a.z};
}
template<class T>
constexpr Vec3T<T> operator*(double s, Vec3T<T> a)
{
    return a *= s;
}
template<class T>
constexpr Vec3T<T> operator*(Vec3T<T> a, double s)
{
    return a *= s;
}

constexpr double dot(const Vec3& a, const Vec3& b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline cplx dot(const Vec3& a, const CVec3& b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr double norm2(const Vec3& a)
{
    return dot(a, a);
}
inline double norm(const Vec3& a)
{
    return std::sqrt(norm2(a));
}
inline CVec3 operator*(cplx s, const Vec3& a)
{
    return {s * a.x, s * a.y, s * a.z};
}

//! 3x3 real matrix, row-major; used for rotating kernel arguments.
struct Mat3
{
    double m[3][3]{};

    Vec3 operator*(const Vec3& v) const
    {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 transposed() const
    {
        Mat3 t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                t.m[i][j] = m[j][i];
        return t;
    }
};

} // namespace dilab
