#include "disturbsim/cli/dispatch.hpp"

int main(int argc, char** argv) { return disturbsim::cli::dispatch(argc, argv); }
