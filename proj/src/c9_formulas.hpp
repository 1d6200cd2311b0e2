#pragma once

// Charts C91 and C92 written once for any complex-like scalar T that supports
// + - * / with itself and with double. Used in double precision by the atlas
// and in binary128 by the Laurent oracle.

namespace okamoto::c9 {

template <class T>
T pw(const T& x, int n) {
    T r = x;
    T acc(1.0);
    while (n > 0) {
        if (n & 1) acc = acc * r;
        r = r * r;
        n >>= 1;
    }
    return acc;
}

// C91: a = u911, b = u912.
template <class T>
T d91(const T& a, const T& b, const T& Z) {
    return 4.0 + 32.0 * pw(b, 4) + a * pw(b, 6) - 256.0 * Z * pw(b, 5);
}

template <class T>
void inverse91(const T& a, const T& b, const T& Z, T& u1, T& u2) {
    const T D = d91(a, b, Z);
    u1 = T(1.0) / (pw(b, 2) * D);
    u2 = T(1.0) / (pw(b, 3) * D);
}

// Field numerators; both components share the denominator d91.
template <class T>
void field91_num(const T& a, const T& b, const T& Z, T& n1, T& n2) {
    const T b2 = pw(b, 2), b4 = pw(b, 4), b6 = pw(b, 6), b8 = pw(b, 8), b10 = pw(b, 10);
    const T b12 = pw(b, 12), b14 = pw(b, 14), a2 = a * a;
    const T Z2 = Z * Z;
    n1 = b * (-2048.0 - 320.0 * a * b2 + 57344.0 * b4 - 9.0 * a2 * b4 + 4096.0 * a * b6
              + 196608.0 * b8 + 72.0 * a2 * b8 + 20480.0 * a * b10 + 704.0 * a2 * b12
              + 8.0 * a2 * a * b14)
         - 2.0 * Z * (12.0 * a - 36864.0 * b2 - 2016.0 * a * b4 + 491520.0 * b6 + 3.0 * a2 * b6
                      + 17408.0 * a * b8 + 2490368.0 * b10 + 172032.0 * a * b12 + 2944.0 * a2 * b14)
         + 512.0 * Z2 * b2 * b * (-960.0 + 3.0 * a * b2 + 8192.0 * b4 + 81920.0 * b8 + 2816.0 * a * b10)
         - 117440512.0 * Z2 * Z * b12;
    n2 = -(2.0 - 16.0 * b4 - a * b6 + 256.0 * b8 + 8.0 * a * b10 + 1024.0 * b12 + 64.0 * a * b14
           + a2 * b8 * b8
           - Z * b * (4.0 - 224.0 * b4 + a * b6 + 2048.0 * b8 + 16384.0 * b12 + 512.0 * a * b14)
           + 256.0 * Z2 * b6 * (1.0 + 256.0 * b8));
}

// E * w91 = ew91_num / b.
template <class T>
T ew91_num(const T& a, const T& b, const T& Z) {
    const T b2 = pw(b, 2), b4 = pw(b, 4), b8 = pw(b, 8);
    return -0.5 * (b * (-a + 512.0 * b2 + 16.0 * a * b4 + 2048.0 * b4 * b2 + 128.0 * a * b8
                        + 2.0 * a * a * b8 * b2)
                   - 256.0 * Z * (-1.0 + 16.0 * b4 + 128.0 * b8 + 4.0 * a * b8 * b2)
                   + 131072.0 * Z * Z * b8 * b);
}

// E' * w91 = edw91_num / b^2.
template <class T>
T edw91_num(const T& a, const T& b, const T& Z) {
    const T b2 = pw(b, 2), b4 = pw(b, 4), b8 = pw(b, 8), b10 = b8 * b2;
    return Z * (-64.0 - 3.0 * a * b2 + 512.0 * b4 + 16.0 * a * b4 * b2 + 2048.0 * b8
                + 128.0 * a * b10 + 2.0 * a * a * b10 * b2
                - 256.0 * Z * b * (-3.0 + 16.0 * b4 + 128.0 * b8 + 4.0 * a * b10)
                + 131072.0 * Z * Z * b10);
}

// C92: a = u921, b = u922.
template <class T>
T d92(const T& a, const T& b, const T& Z) {
    const T a4b4 = pw(a * b, 4);
    return 4.0 + 32.0 * a4b4 + pw(a, 6) * pw(b, 5) - 256.0 * Z * a4b4 * a * b;
}

template <class T>
void inverse92(const T& a, const T& b, const T& Z, T& u1, T& u2) {
    const T D = d92(a, b, Z);
    const T ab = a * b;
    u1 = T(1.0) / (ab * ab * D);
    u2 = T(1.0) / (ab * ab * ab * D);
}

// Field: (n1 / (b d92), n2 / d92).
template <class T>
void field92_num(const T& a, const T& b, const T& Z, T& n1, T& n2) {
    const T a2 = pw(a, 2), a4 = pw(a, 4), a6 = pw(a, 6), a8 = pw(a, 8), a10 = pw(a, 10);
    const T a12 = pw(a, 12), a14 = pw(a, 14);
    const T b2 = pw(b, 2), b3 = pw(b, 3), b4 = pw(b, 4), b5 = pw(b, 5), b7 = pw(b, 7);
    const T b8 = pw(b, 8), b9 = pw(b, 9), b11 = pw(b, 11), b12 = pw(b, 12), b13 = pw(b, 13);
    const T Z2 = Z * Z;
    n1 = -(2.0 + 2048.0 * a2 * b3 + 304.0 * a4 * b4 + 8.0 * a6 * b5 - 57344.0 * a6 * b7
           - 3840.0 * a8 * b8 - 64.0 * a10 * b9 - 196608.0 * a10 * b11 - 19456.0 * a12 * b12
           - 640.0 * a14 * b13 - 7.0 * a8 * a8 * b13 * b
           + Z * a * b * (20.0 - 73728.0 * a2 * b3 - 3808.0 * a4 * b4 + 5.0 * a6 * b5
                          + 983040.0 * a6 * b7 + 32768.0 * a8 * b8 + 4980736.0 * a10 * b11
                          + 327680.0 * a12 * b12 + 5376.0 * a14 * b13)
           - 256.0 * Z2 * a4 * b5 * (-1920.0 + 5.0 * a2 * b + 16384.0 * a4 * b4 + 163840.0 * a8 * b8
                                     + 5376.0 * a10 * b9)
           + 117440512.0 * Z2 * Z * a12 * a * b13 * b);
    n2 = -b * (a * b2 * (-2048.0 - 320.0 * a2 * b - 9.0 * a4 * b2 + 57344.0 * a4 * b4
                         + 4096.0 * a6 * b5 + 72.0 * a8 * b2 * b4 + 196608.0 * a8 * b8
                         + 20480.0 * a10 * b9 + 704.0 * a12 * b5 * b5 + 8.0 * a14 * b11)
               - 2.0 * Z * (12.0 - 36864.0 * a2 * b3 - 2016.0 * a4 * b4 + 3.0 * a6 * b5
                            + 491520.0 * a6 * b7 + 17408.0 * a8 * b8 + 2490368.0 * a10 * b11
                            + 172032.0 * a12 * b12 + 2944.0 * a14 * b13)
               + 512.0 * Z2 * a2 * a * b4 * (-960.0 + 3.0 * a2 * b + 8192.0 * a4 * b4
                                             + 81920.0 * a8 * b8 + 2816.0 * a10 * b9)
               - 117440512.0 * Z2 * Z * a12 * b13);
}

// E * w92 = ew92_num / a.
template <class T>
T ew92_num(const T& a, const T& b, const T& Z) {
    const T a4b4 = pw(a * b, 4), a8b8 = a4b4 * a4b4;
    const T a2 = a * a, b3 = pw(b, 3);
    return -0.5 * (a * (-1.0 + 512.0 * a2 * b3 + 16.0 * a4b4 + 2048.0 * a4b4 * a2 * b3
                        + 128.0 * a8b8 + 2.0 * a8b8 * a2 * b)
                   - 256.0 * Z * (-1.0 + 16.0 * a4b4 + 128.0 * a8b8 + 4.0 * a8b8 * a2 * b)
                   + 131072.0 * Z * Z * a8b8 * a * b);
}

// E' * w92 = edw92_num / (a^2 b).
template <class T>
T edw92_num(const T& a, const T& b, const T& Z) {
    const T a4b4 = pw(a * b, 4), a8b8 = a4b4 * a4b4;
    const T a2 = a * a;
    return Z * (-64.0 - 3.0 * a2 * b + 512.0 * a4b4 + 16.0 * a4b4 * a2 * b + 2048.0 * a8b8
                + 128.0 * a8b8 * a2 * b + 2.0 * a8b8 * a2 * a2 * b * b
                - 256.0 * Z * a * b * (-3.0 + 16.0 * a4b4 + 128.0 * a8b8 + 4.0 * a8b8 * a2 * b)
                + 131072.0 * Z * Z * a8b8 * a2 * b * b);
}

}  // namespace okamoto::c9
