#include "advmorph/logging.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>

namespace advmorph {

void init_logging() {
  auto logger = spdlog::stderr_color_mt("advmorph");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("ADVMORPH_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

}  // namespace advmorph
