// Copyright 2026 The sdsdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli_app.hpp"

#include <iostream>

int main(int argc, char** argv) { return sds::cli::run(argc, argv, std::cout, std::cerr); }
