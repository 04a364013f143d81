#include <iostream>
#include <string>
#include <vector>

#include "esdisp_app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return esdisp::app::run(args, std::cout, std::cerr);
}
