#pragma once

#include <string>

namespace sfd {

/// Full-precision decimal rendering (17 significant digits). Every emitted
/// number re-parses to the same bits, which keeps artifacts byte-stable.
std::string format_full(double v);

}  // namespace sfd
