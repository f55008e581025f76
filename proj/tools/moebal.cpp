// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include <iostream>

#include "moebal/cli.hpp"

int main(int argc, char** argv) {
  return moebal::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
