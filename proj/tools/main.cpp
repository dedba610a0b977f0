#include "gdisc/cli.hpp"

int main(int argc, char** argv) { return gdisc::run_cli(argc, argv); }
