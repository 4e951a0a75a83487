#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "owlet/entropy.hpp"

namespace owlet::cli {

/// Entry point: argv without the program name. Exit codes:
///   0 success, 1 verdict failure, 2 input error, 3 budget exhausted.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// ---- preset parsers shared with the test harness ----

/// full:<k>[:<d>] | full-2 | full-3 | full-4 | golden-mean | hard-square |
/// single-point | product:<a>:<b>
dynamics::Subshift parse_subshift(const std::string& preset);

/// identity:<shift> | to-point:<shift> | merge:<k>:<m> | four-to-two |
/// projection:<a>:<b> | xor
dynamics::SlidingBlockCode parse_code(const std::string& preset);

/// intervals | shifted-intervals | cubes:<d> | boxes:<d> | constant |
/// offset-boxes:<d>:<offset> | padic:<p>:<prec>
groups::VanHoveSequence parse_sequence(const std::string& preset);

/// Seeded chain of surjective symbol merges k0 -> k1 -> k2 with k0 <= max_alphabet.
std::pair<dynamics::SlidingBlockCode, dynamics::SlidingBlockCode> random_merge_chain(
    unsigned seed, int max_alphabet = 6);

}  // namespace owlet::cli
