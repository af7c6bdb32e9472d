#include "lgtd/cli.hpp"

int main(int argc, char** argv) { return lgtd::cli::run(argc, argv); }
