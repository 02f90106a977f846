#include <iostream>

#include "qis/report.hpp"

int main(int argc, char** argv) { return qis::run_cli(argc, argv, std::cout); }
