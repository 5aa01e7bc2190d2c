#include "rcert/harness.hpp"

int main(int argc, char** argv) { return rcert::cli_main(argc, argv); }
