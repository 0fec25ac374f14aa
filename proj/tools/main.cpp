#include "epsw/commands.hpp"

int main(int argc, char** argv) { return epsw::dispatch(argc, argv); }
