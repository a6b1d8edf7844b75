#include "toeplitz_spectra/cli.hpp"

int main(int argc, char** argv)
{
    return toeplitz::cli::run(argc, argv);
}
