// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "lgsim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return lgsim::cli::main_entry(args, std::cout, std::cerr);
}
