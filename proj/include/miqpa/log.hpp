#pragma once

// Trace output on stderr, controlled by MIQPA_LOG (0 or unset: silent,
// 1: driver steps, 2: also mesh and branch-and-bound detail).

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace miqpa::log {

inline int level() {
  static const int lvl = [] {
    const char* v = std::getenv("MIQPA_LOG");
    if (!v || !*v) return 0;
    return std::atoi(v);
  }();
  return lvl;
}

template <class... Args>
void at(int lvl, const Args&... args) {
  if (level() < lvl) return;
  std::ostringstream os;
  os << "[miqpa] ";
  (os << ... << args);
  os << '\n';
  std::cerr << os.str();
}

}  // namespace miqpa::log
