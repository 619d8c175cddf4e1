#include "convval/cli_driver.hpp"

int main(int argc, char** argv) { return convval::run_cli(argc, argv); }
