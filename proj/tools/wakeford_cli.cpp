#include <iostream>
#include <string>
#include <vector>

#include "wakeford/cli_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    wakeford::CliResult result = wakeford::run_cli(args);
    if (!result.output.empty() && result.out_written_to.empty()) std::cout << result.output;
    if (!result.diagnostics.empty()) std::cerr << result.diagnostics << '\n';
    return result.exit_code;
}
