#pragma once
// Command-line front end: parsing, the flat key=value config overlay, and the
// subcommand runners.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace funbialign::cli {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    std::string subcommand;

    // global
    unsigned threads = 0;
    std::string log_level = "warn";

    // shared inputs/outputs
    std::string input;
    std::string out;
    std::string truth;
    std::string motifs;
    std::uint64_t seed = 1;
    bool csv_header = false;

    // simulate
    std::size_t points = 7001;
    std::size_t knot_spacing = 10;
    std::size_t order = 3;
    std::size_t n_motifs = 4;
    std::size_t occurrences = 8;
    std::size_t motif_spans = 4;
    std::vector<double> sigma{0.1};

    // discover
    std::size_t length = 41;
    std::size_t min_card = 6;
    std::string criterion = "rank-sum";
    std::size_t max_results = 0;
    std::string dump_dendrogram;

    // score
    std::string portions;

    // evaluate
    double threshold = 0.5;

    // verify-bias
    std::size_t cardinality = 6;
    std::size_t trials = 50;

    // plot
    std::string curves;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct ParseOutcome {
    enum class Kind { Run, Exit };
    Kind kind = Kind::Run;
    int exit_code = 0;  // for Exit: 0 after --help/--version, 1 on bad arguments
    RunConfig config;
};

// `args` excludes the program name. Flags given explicitly override values
// from --config FILE.
ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Flat key=value text holding the subcommand's settings; parsing it back with
// --config reproduces the same RunConfig.
std::string serialize(const RunConfig& config);

// Executes one subcommand. Returns 0 on success, 1 on input errors, 2 on
// internal invariant violations; each failure writes one diagnostic line.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace funbialign::cli
