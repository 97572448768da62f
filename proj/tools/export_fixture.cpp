// Writes the built-in stethoscope case study as a project file.
#include <iostream>

#include "dforge/fixtures/stethoscope.hpp"
#include "dforge/io/json.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <output.json>\n";
    return 2;
  }
  try {
    dforge::io::save_project_file(dforge::fixtures::stethoscope_project(), argv[1]);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
