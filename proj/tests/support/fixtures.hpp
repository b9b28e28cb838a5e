#pragma once

#include <string>

#include "skein/diagram.hpp"

namespace skein::testing {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);
Diagram load_fixture(const std::string& name);

}  // namespace skein::testing
