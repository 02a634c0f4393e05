#include "cli.hpp"

int main(int argc, char **argv)
{
    return ghopt::cli::run(argc, argv);
}
