// Copyright 2026 The qdecay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * Small fixed-size complex matrices and the Hermitian spectral routines
 * (eigensolver, PSD square root, trace norm) the rest of the library is
 * built on.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qdecay {

using cplx = std::complex<double>;

/// Raised when a matrix that must be Hermitian is not.
class non_hermitian_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an operator that must be a physical (PSD, unit trace) state is not.
class non_physical_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdClamp = 1e-10;

/**
 * Dense N x N complex matrix, row-major, value semantics.
 */
template <std::size_t N>
class Mat {
public:
    static constexpr std::size_t dim = N;

    constexpr Mat() : a_{} {}

    static constexpr Mat identity() {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static constexpr Mat diagonal(const std::array<cplx, N>& d) {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    constexpr cplx& operator()(std::size_t i, std::size_t j) { return a_[i * N + j]; }
    constexpr const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * N + j]; }

    Mat adjoint() const {
        Mat r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    Mat transpose() const {
        Mat r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    Mat conj() const {
        Mat r;
        for (std::size_t k = 0; k < N * N; ++k) r.a_[k] = std::conj(a_[k]);
        return r;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    /// Largest absolute entry.
    double max_abs() const {
        double m = 0.0;
        for (const auto& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    bool is_finite() const {
        return std::all_of(a_.begin(), a_.end(), [](const cplx& z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        });
    }

    Mat& operator+=(const Mat& o) {
        for (std::size_t k = 0; k < N * N; ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (std::size_t k = 0; k < N * N; ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(cplx s) {
        for (auto& z : a_) z *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, cplx s) { return a *= s; }
    friend Mat operator*(cplx s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    std::array<cplx, N * N> a_;
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

/// Max |m_ij - conj(m_ji)|.
template <std::size_t N>
double hermitian_deviation(const Mat<N>& m) {
    double dev = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j)
            dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    return dev;
}

/// Max |a_ij - b_ij|.
template <std::size_t N>
double max_abs_diff(const Mat<N>& a, const Mat<N>& b) {
    return (a - b).max_abs();
}

/// Kronecker product of two square matrices.
template <std::size_t A, std::size_t B>
Mat<A * B> kron(const Mat<A>& a, const Mat<B>& b) {
    Mat<A * B> r;
    for (std::size_t i = 0; i < A; ++i)
        for (std::size_t j = 0; j < A; ++j)
            for (std::size_t k = 0; k < B; ++k)
                for (std::size_t l = 0; l < B; ++l) r(i * B + k, j * B + l) = a(i, j) * b(k, l);
    return r;
}

/**
 * Hermitian matrix: a Mat<N> checked for M = M^H on construction. The
 * stored matrix is symmetrized so downstream code sees exact Hermiticity.
 */
template <std::size_t N>
class HermitianMat {
public:
    explicit HermitianMat(const Mat<N>& m, double tol = kHermitianTol) : m_(m) {
        if (!m.is_finite()) throw non_hermitian_error("matrix has non-finite entries");
        const double dev = hermitian_deviation(m);
        if (dev > tol) {
            std::ostringstream os;
            os << "matrix is not Hermitian: max |m_ij - conj(m_ji)| = " << dev << " > " << tol;
            throw non_hermitian_error(os.str());
        }
        for (std::size_t i = 0; i < N; ++i) {
            m_(i, i) = m(i, i).real();
            for (std::size_t j = i + 1; j < N; ++j) {
                const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
                m_(i, j) = avg;
                m_(j, i) = std::conj(avg);
            }
        }
    }

    const Mat<N>& mat() const { return m_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Mat<N> m_;
};

template <std::size_t N>
struct EigenSystem {
    std::array<double, N> values;  ///< descending
    Mat<N> vectors;                ///< column k is the eigenvector of values[k]
};

/**
 * Cyclic complex Jacobi eigensolver for Hermitian matrices.
 *
 * Each rotation first removes the phase of the pivot a_pq with a diagonal
 * unitary, then applies a real Givens rotation. Sweeps stop once the
 * off-diagonal Frobenius mass falls below 1e-14 (relative to ||m||_F when
 * that exceeds one).
 */
template <std::size_t N>
EigenSystem<N> eig_hermitian(const HermitianMat<N>& h) {
    Mat<N> a = h.mat();
    Mat<N> v = Mat<N>::identity();

    const double scale = std::max(1.0, a.frobenius());
    const double stop = 1e-14 * scale;
    auto off_norm = [&a] {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 64 && off_norm() >= stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                const cplx phase = a(p, q) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U = D R restricted to (p,q): D = diag(1, conj(phase)).
                const cplx upp = c;
                const cplx upq = s;
                const cplx uqp = -s * std::conj(phase);
                const cplx uqq = c * std::conj(phase);

                for (std::size_t k = 0; k < N; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < N; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

template <std::size_t N>
EigenSystem<N> eig_hermitian(const Mat<N>& m) {
    return eig_hermitian(HermitianMat<N>(m));
}

/// V diag(f(lambda)) V^H from an eigen-decomposition.
template <std::size_t N, class F>
Mat<N> spectral_map(const EigenSystem<N>& es, F&& f) {
    Mat<N> r;
    for (std::size_t k = 0; k < N; ++k) {
        const double fk = f(es.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                r(i, j) += fk * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    return r;
}

/**
 * Principal square root of a positive semidefinite matrix. Eigenvalues in
 * [-1e-10, 0) are clamped to zero; anything more negative is rejected as a
 * non-physical operator.
 */
template <std::size_t N>
HermitianMat<N> sqrt_psd(const HermitianMat<N>& m) {
    const auto es = eig_hermitian(m);
    const double lowest = es.values[N - 1];
    if (lowest < -kPsdClamp) {
        std::ostringstream os;
        os << "operator is not positive semidefinite: min eigenvalue " << lowest;
        throw non_physical_error(os.str());
    }
    Mat<N> s = spectral_map(es, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
    return HermitianMat<N>(s, 1e-9);
}

/// Sum of |eigenvalues|.
template <std::size_t N>
double trace_norm(const HermitianMat<N>& m) {
    const auto es = eig_hermitian(m);
    double s = 0.0;
    for (double x : es.values) s += std::abs(x);
    return s;
}

}  // namespace qdecay
