// SPDX-License-Identifier: Apache-2.0

#include "run_command.hpp"

#include <cstdio>

int main(int argc, char** argv) {
   std::vector<std::string> args(argv, argv + argc);
   std::string out;
   std::string err;
   const int code = enrifact::cli::run_command(args, out, err);
   std::fwrite(out.data(), 1, out.size(), stdout);
   std::fwrite(err.data(), 1, err.size(), stderr);
   return code;
}
