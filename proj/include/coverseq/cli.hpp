#ifndef COVERSEQ_CLI_HPP
#define COVERSEQ_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace coverseq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInvariant = 2;

/// Runs one command. args excludes the program name. Sequences are read from
/// `in` unless --input is given and written to `out` unless --output is given;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace coverseq::cli

#endif  // COVERSEQ_CLI_HPP
