#pragma once

#include <cmath>
#include <random>

namespace gmra {

template <class Rng>
Matrix<Complex> random_unitary(std::size_t n, Rng& rng) {
    // Gram–Schmidt on a complex Ginibre matrix. The implied R factor has a
    // positive diagonal, which makes Q Haar-distributed.
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix<Complex> q(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            q(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        // Two passes keep the columns orthogonal to working precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t prev = 0; prev < c; ++prev) {
                Complex dot{};
                for (std::size_t r = 0; r < n; ++r) {
                    dot += std::conj(q(r, prev)) * q(r, c);
                }
                for (std::size_t r = 0; r < n; ++r) {
                    q(r, c) -= dot * q(r, prev);
                }
            }
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            norm += std::norm(q(r, c));
        }
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < n; ++r) {
            q(r, c) /= norm;
        }
    }
    return q;
}

}  // namespace gmra
