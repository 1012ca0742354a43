#include "discord_lab/cli.hpp"

int main(int argc, char** argv) { return discord::cli::run_cli(argc, argv); }
