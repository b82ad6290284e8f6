#include "mlse/cli.hpp"

int main(int argc, char** argv) { return mlse::run_cli(argc, argv); }
