#include <duflo/cli.hpp>

int main(int argc, char** argv) { return duflo::cli_main(argc, argv); }
