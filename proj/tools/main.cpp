#include <iostream>

#include "mlsc/cli.hpp"

int main(int argc, char** argv) { return mlsc::dispatch(argc, argv, std::cout, std::cerr); }
