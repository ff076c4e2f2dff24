#include "kripkelab/parallel.hpp"

#include <cstdlib>
#include <string>

#include "kripkelab/error.hpp"

namespace kripkelab {

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KRIPKELAB_THREADS"); env && *env) {
    std::size_t pos = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(env, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || env[pos] != '\0' || value == 0)
      throw InvalidInput(std::string("KRIPKELAB_THREADS must be a positive integer, got '") + env + "'");
    return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace kripkelab
