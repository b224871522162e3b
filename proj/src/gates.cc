/*
 * Copyright 2026 The MBQC Sampling Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mbqc/gates.h"

#include <cmath>
#include <numbers>

namespace mbqc {

Mat2 Mat2::operator*(const Mat2 &o) const {
    Mat2 r;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
        }
    }
    return r;
}

Mat2 Mat2::operator*(cplx s) const {
    Mat2 r = *this;
    for (auto &e : r.m) {
        e *= s;
    }
    return r;
}

Mat2 Mat2::operator+(const Mat2 &o) const {
    Mat2 r = *this;
    for (int k = 0; k < 4; k++) {
        r.m[k] += o.m[k];
    }
    return r;
}

Mat2 Mat2::adjoint() const {
    Mat2 r;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            r(i, j) = std::conj((*this)(j, i));
        }
    }
    return r;
}

Mat2 Mat2::conj() const {
    Mat2 r = *this;
    for (auto &e : r.m) {
        e = std::conj(e);
    }
    return r;
}

double Mat2::max_diff(const Mat2 &o) const {
    double d = 0;
    for (int k = 0; k < 4; k++) {
        d = std::max(d, std::abs(m[k] - o.m[k]));
    }
    return d;
}

Mat4 Mat4::operator*(const Mat4 &o) const {
    Mat4 r;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            cplx t = 0;
            for (int k = 0; k < 4; k++) {
                t += (*this)(i, k) * o(k, j);
            }
            r(i, j) = t;
        }
    }
    return r;
}

Mat4 Mat4::operator*(cplx s) const {
    Mat4 r = *this;
    for (auto &e : r.m) {
        e *= s;
    }
    return r;
}

double Mat4::max_diff(const Mat4 &o) const {
    double d = 0;
    for (int k = 0; k < 16; k++) {
        d = std::max(d, std::abs(m[k] - o.m[k]));
    }
    return d;
}

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 r;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            r(i, j) = a(i & 1, j & 1) * b(i >> 1, j >> 1);
        }
    }
    return r;
}

namespace gate_matrix {

using namespace std::complex_literals;

Mat2 identity() {
    return Mat2{{1, 0, 0, 1}};
}

Mat2 hadamard() {
    double s = std::numbers::sqrt2 / 2;
    return Mat2{{s, s, s, -s}};
}

Mat2 pauli_x() {
    return Mat2{{0, 1, 1, 0}};
}

Mat2 pauli_y() {
    return Mat2{{0, -1i, 1i, 0}};
}

Mat2 pauli_z() {
    return Mat2{{1, 0, 0, -1}};
}

Mat2 rz(double theta) {
    return Mat2{{std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)}};
}

Mat2 rxy(double theta, double phi) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return Mat2{{c, -1i * std::polar(s, -phi), -1i * std::polar(s, phi), c}};
}

Mat2 rx(double theta) {
    return rxy(theta, 0);
}

Mat2 ry(double theta) {
    return rxy(theta, std::numbers::pi / 2);
}

Mat2 rotated_x(double beta) {
    return Mat2{{0, std::polar(1.0, -beta), std::polar(1.0, beta), 0}};
}

Mat4 cz() {
    Mat4 r;
    r(0, 0) = 1;
    r(1, 1) = 1;
    r(2, 2) = 1;
    r(3, 3) = -1;
    return r;
}

Mat4 ms() {
    double s = std::numbers::sqrt2 / 2;
    Mat4 r;
    for (int i = 0; i < 4; i++) {
        r(i, i) = s;
        r(i, 3 - i) = -1i * s;
    }
    return r;
}

}  // namespace gate_matrix

}  // namespace mbqc
