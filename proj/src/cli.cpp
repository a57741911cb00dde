#include "funbialign/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <boost/version.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "funbialign/bias_check.hpp"
#include "funbialign/errors.hpp"
#include "funbialign/io.hpp"
#include "funbialign/pipeline.hpp"
#include "funbialign/plot.hpp"
#include "funbialign/scoring.hpp"
#include "funbialign/simulation.hpp"

namespace funbialign::cli {
namespace {

const std::vector<std::string> kSubcommands = {"simulate", "discover", "score",
                                               "evaluate", "verify-bias", "plot"};

std::string version_text() {
    return std::string("funbialign ") + kVersion + " (prng " + kPrngName + ", boost.random " +
           BOOST_LIB_VERSION + ")";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// key=value lines, '#' comments.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::istringstream in(io::read_text(path));
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::MalformedInput,
                        "config line " + std::to_string(line_no) + " is not key=value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

bool mentions_flag(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

// Inserts file settings right after the subcommand token, skipping keys the
// user passed explicitly.
std::vector<std::string> overlay_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    const auto settings = read_config_file(path);

    std::vector<std::string> injected;
    for (const auto& [key, value] : settings) {
        if (key == "config" || mentions_flag(args, key)) continue;
        if (value == "true" || value == "false") {
            if (value == "true") injected.push_back("--" + key);
            continue;
        }
        injected.push_back("--" + key);
        injected.push_back(value);
    }
    auto sub = std::find_first_of(args.begin(), args.end(), kSubcommands.begin(), kSubcommands.end());
    std::vector<std::string> merged(args.begin(), sub == args.end() ? sub : std::next(sub));
    merged.insert(merged.end(), injected.begin(), injected.end());
    if (sub != args.end()) merged.insert(merged.end(), std::next(sub), args.end());
    return merged;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void configure_logging(const std::string& level) {
    auto logger = spdlog::get("funbialign");
    if (!logger) logger = spdlog::stderr_logger_mt("funbialign");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::from_str(level));
}

SimulationConfig simulation_config(const RunConfig& c) {
    SimulationConfig s;
    s.curve_points = c.points;
    s.knot_spacing = c.knot_spacing;
    s.spline_order = c.order;
    s.n_motifs = c.n_motifs;
    s.occurrences = c.occurrences;
    s.motif_spans = c.motif_spans;
    s.sigmas = c.sigma;
    s.rng_seed = c.seed;
    return s;
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw Error(ErrorKind::InvalidConfig, std::string("missing required flag ") + flag);
}

void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
    } else {
        io::atomic_write(path, content);
    }
}

int run_simulate(const RunConfig& c, std::ostream& out) {
    require(c.out, "--out");
    const auto sim = simulate(simulation_config(c));
    const bool csv = std::filesystem::path(c.out).extension() == ".csv";
    io::atomic_write(c.out, csv ? io::curves_to_csv(sim.curves) : io::curves_to_json(sim.curves));
    if (!c.truth.empty()) io::atomic_write(c.truth, io::truth_to_json(sim.truth));
    out << "simulated " << sim.curves[0].size() << " points with " << sim.truth.motifs.size() << " motifs x "
        << c.occurrences << " occurrences\n";
    return 0;
}

int run_discover(const RunConfig& c, std::ostream& out) {
    require(c.input, "--input");
    const auto criterion = parse_criterion(c.criterion);
    if (!criterion) throw Error(ErrorKind::InvalidConfig, "unknown criterion '" + c.criterion + "'");
    auto curves = std::make_shared<const CurveSet>(io::read_curves(c.input, c.csv_header));

    DiscoveryOptions options;
    options.length_points = c.length;
    options.min_cardinality = c.min_card;
    options.criterion = *criterion;
    options.max_results = c.max_results;
    options.threads = c.threads;
    const auto result = discover(curves, options);

    if (!c.dump_dendrogram.empty()) io::atomic_write(c.dump_dendrogram, io::dendrogram_to_json(result.tree));
    const io::MotifFileHeader header{c.length, c.min_card, *criterion};
    write_or_print(c.out, io::motifs_to_json(header, result.motifs, result.portions), out);
    if (!c.out.empty()) out << result.motifs.size() << " motifs written to " << c.out << "\n";
    return 0;
}

int run_score(const RunConfig& c, std::ostream& out) {
    require(c.input, "--input");
    require(c.portions, "--portions");
    const auto curves = io::read_curves(c.input, c.csv_header);
    const auto refs = io::parse_portion_refs(io::read_text(c.portions), curves);
    std::vector<std::span<const double>> views;
    for (const auto& r : refs) views.push_back(portion_values(r, curves));
    const auto score = fmsr_adjusted(PortionViews(views));
    out << "h=" << fmt_double(score.h) << " h_adjusted=" << fmt_double(score.h_adjusted)
        << " n_Q=" << score.cardinality << "\n";
    return 0;
}

int run_evaluate(const RunConfig& c, std::ostream& out) {
    require(c.motifs, "--motifs");
    require(c.truth, "--truth");
    const auto motifs = io::parse_motifs(io::read_text(c.motifs));
    const auto truth = io::parse_truth(io::read_text(c.truth));
    const auto report = evaluate(motifs, truth, c.threshold);
    out << io::report_to_table(report);
    const auto json = io::report_to_json(report);
    if (c.out.empty()) {
        out << json;
    } else {
        io::atomic_write(c.out, json);
    }
    return 0;
}

int run_verify_bias(const RunConfig& c, std::ostream& out) {
    const auto check = verify_bias(c.cardinality, c.length, c.trials, c.seed);
    out << "max_relative_deviation=" << fmt_double(check.max_ratio_deviation)
        << " max_adjusted_deviation=" << fmt_double(check.max_adjusted_deviation) << "\n";
    constexpr double kTolerance = 1e-10;
    if (check.max_ratio_deviation >= kTolerance || check.max_adjusted_deviation >= kTolerance) {
        throw Error(ErrorKind::BiasLawViolation, "sub-motif averages deviate from n^2/(n^2-1) scaling");
    }
    return 0;
}

int run_plot(const RunConfig& c, std::ostream& out) {
    require(c.motifs, "--motifs");
    require(c.curves, "--curves");
    require(c.out, "--out");
    const auto motifs = io::parse_motifs(io::read_text(c.motifs));
    const auto curves = io::read_curves(c.curves, c.csv_header);
    const auto written = plot::write_plots(motifs, curves, c.out);
    out << written.size() << " SVG files written to " << c.out << "\n";
    return 0;
}

} // namespace

ParseOutcome parse_args(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    ParseOutcome outcome;
    RunConfig& c = outcome.config;

    CLI::App app{"Functional motif discovery in sampled curves", "funbialign"};
    app.set_version_flag("--version", version_text());
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", c.threads, "worker threads, 0 = all cores");
    app.add_option("--log-level", c.log_level, "trace|debug|info|warn|error|off")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value file; explicit flags win");

    auto* sim = app.add_subcommand("simulate", "B-spline curve with planted motifs");
    sim->add_option("--points", c.points);
    sim->add_option("--knot-spacing", c.knot_spacing);
    sim->add_option("--order", c.order);
    sim->add_option("--n-motifs", c.n_motifs);
    sim->add_option("--occurrences", c.occurrences);
    sim->add_option("--motif-spans", c.motif_spans);
    sim->add_option("--sigma", c.sigma, "noise level, repeat or comma-separate for one per motif")
        ->delimiter(',')
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sim->add_option("--seed", c.seed);
    sim->add_option("--out", c.out, "curve file (.json or .csv)");
    sim->add_option("--truth", c.truth, "ground-truth JSON");

    auto* disc = app.add_subcommand("discover", "find motifs in curves");
    disc->add_option("--input", c.input);
    disc->add_option("--length", c.length, "portion length in grid points");
    disc->add_option("--min-card", c.min_card, "minimum motif cardinality");
    disc->add_option("--criterion", c.criterion)->check(CLI::IsMember({"hadj", "rank-sum", "variance"}));
    disc->add_option("--max-results", c.max_results, "0 = all");
    disc->add_option("--out", c.out);
    disc->add_option("--dump-dendrogram", c.dump_dendrogram);
    disc->add_option("--seed", c.seed, "accepted for symmetry, unused");
    disc->add_flag("--csv-header", c.csv_header);

    auto* score = app.add_subcommand("score", "fMSR of a set of portions");
    score->add_option("--input", c.input);
    score->add_option("--portions", c.portions);
    score->add_flag("--csv-header", c.csv_header);

    auto* eval = app.add_subcommand("evaluate", "compare motifs with planted occurrences");
    eval->add_option("--motifs", c.motifs);
    eval->add_option("--truth", c.truth);
    eval->add_option("--threshold", c.threshold);
    eval->add_option("--out", c.out);

    auto* bias = app.add_subcommand("verify-bias", "check the sub-motif bias law by enumeration");
    bias->add_option("--cardinality", c.cardinality);
    bias->add_option("--length", c.length);
    bias->add_option("--trials", c.trials);
    bias->add_option("--seed", c.seed);

    auto* plt = app.add_subcommand("plot", "SVG figures of motifs");
    plt->add_option("--motifs", c.motifs);
    plt->add_option("--curves", c.curves);
    plt->add_option("--out", c.out, "output directory");
    plt->add_flag("--csv-header", c.csv_header);

    std::vector<std::string> args;
    try {
        args = overlay_config(raw_args);
    } catch (const Error& e) {
        err << e.what() << "\n";
        outcome.kind = ParseOutcome::Kind::Exit;
        outcome.exit_code = 1;
        return outcome;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        outcome.kind = ParseOutcome::Kind::Exit;
        outcome.exit_code = app.exit(e, out, err) == 0 ? 0 : 1;
        return outcome;
    }
    for (const auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
    return outcome;
}

std::string serialize(const RunConfig& c) {
    std::map<std::string, std::string> kv;
    kv["threads"] = std::to_string(c.threads);
    kv["log-level"] = c.log_level;
    auto put = [&](const char* key, const std::string& v) {
        if (!v.empty()) kv[key] = v;
    };
    const std::string& s = c.subcommand;
    if (s == "simulate") {
        kv["points"] = std::to_string(c.points);
        kv["knot-spacing"] = std::to_string(c.knot_spacing);
        kv["order"] = std::to_string(c.order);
        kv["n-motifs"] = std::to_string(c.n_motifs);
        kv["occurrences"] = std::to_string(c.occurrences);
        kv["motif-spans"] = std::to_string(c.motif_spans);
        std::string sig;
        for (double v : c.sigma) sig += (sig.empty() ? "" : ",") + fmt_double(v);
        kv["sigma"] = sig;
        kv["seed"] = std::to_string(c.seed);
        put("out", c.out);
        put("truth", c.truth);
    } else if (s == "discover") {
        put("input", c.input);
        kv["length"] = std::to_string(c.length);
        kv["min-card"] = std::to_string(c.min_card);
        kv["criterion"] = c.criterion;
        kv["max-results"] = std::to_string(c.max_results);
        put("out", c.out);
        put("dump-dendrogram", c.dump_dendrogram);
        kv["seed"] = std::to_string(c.seed);
        kv["csv-header"] = c.csv_header ? "true" : "false";
    } else if (s == "score") {
        put("input", c.input);
        put("portions", c.portions);
        kv["csv-header"] = c.csv_header ? "true" : "false";
    } else if (s == "evaluate") {
        put("motifs", c.motifs);
        put("truth", c.truth);
        kv["threshold"] = fmt_double(c.threshold);
        put("out", c.out);
    } else if (s == "verify-bias") {
        kv["cardinality"] = std::to_string(c.cardinality);
        kv["length"] = std::to_string(c.length);
        kv["trials"] = std::to_string(c.trials);
        kv["seed"] = std::to_string(c.seed);
    } else if (s == "plot") {
        put("motifs", c.motifs);
        put("curves", c.curves);
        put("out", c.out);
        kv["csv-header"] = c.csv_header ? "true" : "false";
    }
    std::string text;
    for (const auto& [k, v] : kv) text += k + "=" + v + "\n";
    return text;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        configure_logging(c.log_level);
        if (c.subcommand == "simulate") return run_simulate(c, out);
        if (c.subcommand == "discover") return run_discover(c, out);
        if (c.subcommand == "score") return run_score(c, out);
        if (c.subcommand == "evaluate") return run_evaluate(c, out);
        if (c.subcommand == "verify-bias") return run_verify_bias(c, out);
        if (c.subcommand == "plot") return run_plot(c, out);
        throw Error(ErrorKind::InvalidConfig, "unknown subcommand '" + c.subcommand + "'");
    } catch (const Error& e) {
        err << e.what() << "\n";
        return is_internal(e.kind()) ? 2 : 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "FileNotFound: " << e.what() << "\n";
        return 1;
    } catch (const std::bad_alloc&) {
        err << "OutOfMemory: input too large for an in-memory dissimilarity matrix\n";
        return 1;
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto parsed = parse_args(args, out, err);
    if (parsed.kind == ParseOutcome::Kind::Exit) return parsed.exit_code;
    return run(parsed.config, out, err);
}

} // namespace funbialign::cli
