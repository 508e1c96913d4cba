#include "lpsr/harness.hpp"

int main(int argc, char** argv) {
  return lpsr::harness::cli_dispatch(argc, argv);
}
