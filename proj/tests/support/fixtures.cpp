#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace skein::testing {

std::string fixture_path(const std::string& name) {
  return std::string(SKEIN_FIXTURE_DIR) + "/" + name;
}

std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture: " + name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Diagram load_fixture(const std::string& name) { return parse_diagram(read_fixture(name)); }

}  // namespace skein::testing
