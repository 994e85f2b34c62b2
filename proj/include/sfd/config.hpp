#pragma once

#include <string>

#include "sfd/flow.hpp"

namespace sfd {

/**
 * Flat `key = value` run configuration.
 *
 * `#` starts a comment, blank lines are skipped, unknown keys are errors.
 * Keys: alpha, n_cells, tau, t_end, scheme, newton_tol, newton_max_iter,
 * initial, snapshot_every, particles, assembler, fit_window_start,
 * fit_window_end. Absent keys keep the RunConfig defaults.
 */
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Same format back out; parse_config_text(render_config(c)) reproduces c.
std::string render_config(const RunConfig& config);

}  // namespace sfd
