#pragma once

#include <array>

namespace sio {

/// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    const double* nodes;
    const double* weights;
    int size;
};

namespace detail {
inline constexpr std::array<double, 4> kGauss4Nodes = {
    -0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
inline constexpr std::array<double, 4> kGauss4Weights = {
    0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};

inline constexpr std::array<double, 8> kGauss8Nodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGauss8Weights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
} // namespace detail

inline GaussRule gauss4() {
    return {detail::kGauss4Nodes.data(), detail::kGauss4Weights.data(), 4};
}

inline GaussRule gauss8() {
    return {detail::kGauss8Nodes.data(), detail::kGauss8Weights.data(), 8};
}

} // namespace sio
