#include "uavsem/cli.hpp"

int main(int argc, char** argv) { return uavsem::run(argc, argv); }
