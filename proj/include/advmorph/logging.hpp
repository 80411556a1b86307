#pragma once

namespace advmorph {

/// Configures the default logger from ADVMORPH_LOG
/// (trace|debug|info|warn|error|off; default warn). Logs go to stderr.
void init_logging();

}  // namespace advmorph
