#pragma once

#include <complex>

namespace okamoto {

// Minimal binary128 complex arithmetic. Only what the C9 chart formulas and a
// fixed-step integrator need.
struct QComplex {
    __float128 re = 0;
    __float128 im = 0;

    QComplex() = default;
    QComplex(double r) : re(r), im(0) {}
    QComplex(__float128 r, __float128 i) : re(r), im(i) {}
    explicit QComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
inline QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
inline QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
inline QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline QComplex operator/(const QComplex& a, const QComplex& b) {
    const __float128 den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline QComplex operator+(double s, const QComplex& a) { return {s + a.re, a.im}; }
inline QComplex operator+(const QComplex& a, double s) { return {a.re + s, a.im}; }
inline QComplex operator-(double s, const QComplex& a) { return {s - a.re, -a.im}; }
inline QComplex operator-(const QComplex& a, double s) { return {a.re - s, a.im}; }
inline QComplex operator*(double s, const QComplex& a) { return {s * a.re, s * a.im}; }
inline QComplex operator*(const QComplex& a, double s) { return {a.re * s, a.im * s}; }
inline QComplex operator/(const QComplex& a, double s) { return {a.re / s, a.im / s}; }

}  // namespace okamoto
