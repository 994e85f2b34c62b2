#include "sfd/numfmt.hpp"

#include <cstdio>

namespace sfd {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace sfd
