#include "sfd/gauss.hpp"

#include "sfd/errors.hpp"

namespace sfd::gauss {

Rule rule(std::size_t n) {
    switch (n) {
        case 4: return {nodes4, weights4};
        case 8: return {nodes8, weights8};
        case 12: return {nodes12, weights12};
        default: throw IndexOutOfRange("no Gauss rule with " + std::to_string(n) + " points");
    }
}

Rule rule_for_degree(std::size_t degree) {
    if (degree <= 7) return {nodes4, weights4};
    if (degree <= 15) return {nodes8, weights8};
    if (degree <= 23) return {nodes12, weights12};
    throw IndexOutOfRange("no shipped Gauss rule exact for degree " + std::to_string(degree));
}

}  // namespace sfd::gauss
