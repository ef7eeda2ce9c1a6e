#include <iostream>

#include "cmif/cli.hpp"

int main(int argc, char** argv) {
  return cmif::cli_dispatch({argv + 1, argv + argc}, std::cout, std::cerr);
}
