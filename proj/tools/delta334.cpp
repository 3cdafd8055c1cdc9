#include "delta334/cli.hpp"

int main(int argc, char** argv) { return delta334::run_command(argc, argv); }
