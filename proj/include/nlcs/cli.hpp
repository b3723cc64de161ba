#ifndef NLCS_CLI_HPP
#define NLCS_CLI_HPP

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nlcs/algebra.hpp"
#include "nlcs/lattice.hpp"
#include "nlcs/states.hpp"
#include "nlcs/verify.hpp"

namespace nlcs::cli {

enum class Command { State, Impulse, Propagate, BchCheck, Verify };
enum class OutputFormat { Csv, Json };

struct UsageError : Error {
    using Error::Error;
};

/// Thrown by parse_args for --help; carries the help text.
struct HelpRequested {
    std::string text;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage = 2;
inline constexpr int range = 3;
inline constexpr int singularity = 4;
inline constexpr int truncation = 5;
inline constexpr int numeric = 6;
} // namespace exit_code

using MetaValue = std::variant<std::string, double, long long, bool>;

struct RunConfig {
    Command command = Command::State;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> output_path;

    // state
    StateSpec state;
    bool normalize = false;

    // impulse / propagate
    LatticeSpec lattice;
    double zmax = 1.0;
    int samples = 20;
    int steps_per_sample = 0;
    Index input_waveguide = 0;
    Index guides = 0; // rows emitted per z; 0 means every guide below the edge band
    double oracle_tolerance = 1e-8;

    // bch-check
    BCHParams<double> bch{0.0, 1.0, 0.0, BchOrdering::AntinormalFirst};
    Index bch_dim = 64;
    std::optional<Index> edge_exclusion;
    Precision precision = Precision::Quad;
    double tolerance = 1e-9;

    // verify
    Suite suite = Suite::All;
    Index verify_dim = 64;

    /// Resolved parameters in a fixed order, echoed into JSON meta.
    std::vector<std::pair<std::string, MetaValue>> echo;
};

/// Parses "a", "bi", "a+bi", "a-bi" (also "i", "-i", "a+i").
std::complex<double> parse_complex(std::string_view text);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double x);

/// args excludes the program name. Throws UsageError, HelpRequested, or
/// library errors for parameters that violate an operation's preconditions.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the command and writes its artifact to out (or output_path).
/// Returns 0 when every reported residual is within tolerance, else 1.
int run(const RunConfig& config, std::ostream& out);

/// parse_args + run with errors mapped to exit codes and reported on err.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nlcs::cli

#endif
