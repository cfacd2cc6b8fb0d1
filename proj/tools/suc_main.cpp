// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "suc/cli.hpp"

int main(int argc, char** argv) { return suc::run_cli(argc, argv, std::cout, std::cerr); }
