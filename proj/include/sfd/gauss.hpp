#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace sfd::gauss {

/// One Gauss-Legendre rule mapped to [0,1].
struct Rule {
    std::span<const double> nodes;
    std::span<const double> weights;
};

// clang-format off
inline constexpr std::array<double, 4> nodes4{
    0.069431844202973714, 0.33000947820757187,
    0.66999052179242813,  0.93056815579702623};
inline constexpr std::array<double, 4> weights4{
    0.17392742256872684, 0.3260725774312731,
    0.3260725774312731,  0.17392742256872684};

inline constexpr std::array<double, 8> nodes8{
    0.019855071751231912, 0.10166676129318664, 0.2372337950418355,
    0.40828267875217511,  0.59171732124782483, 0.7627662049581645,
    0.89833323870681336,  0.98014492824876809};
inline constexpr std::array<double, 8> weights8{
    0.050614268145188344, 0.11119051722668717, 0.15685332293894352,
    0.18134189168918088,  0.18134189168918088, 0.15685332293894352,
    0.11119051722668717,  0.050614268145188344};

inline constexpr std::array<double, 12> nodes12{
    0.0092196828766403782, 0.047941371814762601, 0.11504866290284765,
    0.20634102285669126,   0.31608425050090994,  0.43738329574426554,
    0.5626167042557344,    0.68391574949909006,  0.79365897714330869,
    0.88495133709715235,   0.95205862818523745,  0.99078031712335957};
inline constexpr std::array<double, 12> weights12{
    0.023587668193256011, 0.053469662997659442, 0.080039164271673055,
    0.10158371336153282,  0.11674626826917732,  0.12457352290670134,
    0.12457352290670134,  0.11674626826917732,  0.10158371336153282,
    0.080039164271673055, 0.053469662997659442, 0.023587668193256011};
// clang-format on

/// Rule exact for polynomials of degree <= 2n-1 on [0,1], n in {4, 8, 12}.
Rule rule(std::size_t n);

/// Smallest shipped rule exact for the given polynomial degree.
Rule rule_for_degree(std::size_t degree);

/// Integrate f over [a,b] with the given rule.
template <typename F>
double integrate(const Rule& r, double a, double b, F&& f) {
    const double len = b - a;
    double acc = 0.0;
    for (std::size_t q = 0; q < r.nodes.size(); ++q) {
        acc += r.weights[q] * f(a + len * r.nodes[q]);
    }
    return len * acc;
}

}  // namespace sfd::gauss
