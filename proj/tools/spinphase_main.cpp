#include <iostream>
#include <string>
#include <vector>

#include "spinphase/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return spinphase::run_cli(args, std::cout, std::cerr, spinphase::CliEnvironment::from_process());
}
