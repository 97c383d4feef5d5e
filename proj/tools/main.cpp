#include <iostream>
#include <string>
#include <vector>

#include "dexseq/app/commands.hpp"

int main(int argc, char** argv) {
  return dexseq::app::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
