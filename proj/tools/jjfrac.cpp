#include "jjfrac/cli/app.hpp"

int main(int argc, char** argv) { return jjfrac::cli::run_app(argc, argv); }
