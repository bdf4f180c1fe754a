#include "poslim/cli.hpp"

int main(int argc, char** argv) {
  return poslim::cli::run(argc, argv);
}
