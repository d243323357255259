#include "wicklab/experiments.h"

int main(int argc, char** argv) { return wicklab::run_cli(argc, argv); }
