#include "osl/experiments.hpp"

int main(int argc, char** argv) { return osl::cli_run(argc, argv); }
