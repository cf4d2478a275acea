#pragma once

#include <string>

#include "bgr/instance.hpp"

namespace testutil {

// Instance text with uniform default capacities prepended.
inline bgr::Instance parse(const std::string& body, int bufcap = 1, int wirecap = 1) {
  return bgr::parse_instance("DEFAULT BUFCAP " + std::to_string(bufcap) + "\nDEFAULT WIRECAP " +
                             std::to_string(wirecap) + "\n" + body);
}

}  // namespace testutil
