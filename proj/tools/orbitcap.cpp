/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/cli.hpp"

int main(int argc, char** argv)
{
  return orbitcap::cli::run({argv + 1, argv + argc});
}
