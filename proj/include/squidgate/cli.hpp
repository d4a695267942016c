#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace squidgate {

// "pi/4", "3pi/4", "2*pi/3", "pi", "-pi/2", or a plain decimal.
double parse_pi_expression(const std::string& text);

// Exit codes: 0 success (and, for gate/qft in analytic mode, fidelity within
// 1e-6 of perfect); 1 fidelity below that bar; 2 constraint violation or
// invalid input/config. CLI11 usage errors keep their own codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace squidgate
