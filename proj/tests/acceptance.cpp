// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "funbialign/bias_check.hpp"
#include "funbialign/cli.hpp"
#include "funbialign/clustering.hpp"
#include "funbialign/discovery.hpp"
#include "funbialign/io.hpp"
#include "funbialign/pipeline.hpp"
#include "funbialign/scoring.hpp"
#include "funbialign/simulation.hpp"
#include "oracles.hpp"

using namespace funbialign;
using funbialign::testing::Matrix;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double peak_rss_mb() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<double>(usage.ru_maxrss) / 1024.0;
}

// Bias law: exhaustive sub-motif averages, 50 motifs of 6 portions x 20 points.
struct BiasTrials {
    double ratio_dev = 0.0;
    double adjusted_dev = 0.0;
    double seconds = 0.0;
};

BiasTrials run_bias_trials() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    BiasTrials out;
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix x = testing::random_matrix(rng, 6, 20);
        const SubMotifAverages avg = submotif_averages(x);
        const double h2 = avg.by_size.at(2);
        for (std::size_t n = 2; n <= 5; ++n) {
            const double expected = static_cast<double>(n * n) / static_cast<double>(n * n - 1);
            const double ratio = avg.by_size.at(n + 1) / avg.by_size.at(n);
            out.ratio_dev = std::max(out.ratio_dev, std::abs(ratio - expected) / expected);
        }
        for (std::size_t n = 2; n <= 6; ++n) {
            const double adjusted = avg.by_size.at(n) / adjustment_factor(n);
            out.adjusted_dev = std::max(out.adjusted_dev, std::abs(adjusted - h2) / h2);
        }
    }
    out.seconds = seconds_since(t0);
    return out;
}

Outcome ideal_motifs() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const std::size_t len = 5 + trial % 30;
        std::vector<double> shape(len);
        for (auto& v : shape) v = u(rng);
        const double c = u(rng);
        Matrix constant(n, std::vector<double>(len, c));
        Matrix shared(n, shape);
        Matrix parallel_constants(n, std::vector<double>(len));
        Matrix parallel_shapes(n, std::vector<double>(len));
        for (std::size_t i = 0; i < n; ++i) {
            const double a = u(rng);
            for (std::size_t j = 0; j < len; ++j) {
                parallel_constants[i][j] = c + a;
                parallel_shapes[i][j] = shape[j] + a;
            }
        }
        for (const Matrix* m : {&constant, &shared, &parallel_constants, &parallel_shapes})
            worst = std::max(worst, fmsr(*m));
    }
    return {worst <= 1e-12, fmt("worst fmsr %.3g over 4 x 100 ideal motifs", worst)};
}

Outcome invariances() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double shift_dev = 0.0, common_dev = 0.0, scale_dev = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 8;
        const std::size_t len = 3 + trial % 25;
        const Matrix x = testing::random_matrix(rng, n, len, -3.0, 3.0);
        const double h = fmsr(x);
        Matrix shifted = x, common = x, scaled = x;
        std::vector<double> g(len);
        for (auto& v : g) v = u(rng);
        const double c = u(rng);
        for (std::size_t i = 0; i < n; ++i) {
            const double a = u(rng);
            for (std::size_t j = 0; j < len; ++j) {
                shifted[i][j] += a;
                common[i][j] += g[j];
                scaled[i][j] *= c;
            }
        }
        shift_dev = std::max(shift_dev, std::abs(fmsr(shifted) - h));
        common_dev = std::max(common_dev, std::abs(fmsr(common) - h));
        scale_dev = std::max(scale_dev, std::abs(fmsr(scaled) - c * c * h) / (c * c * h));
    }
    return {shift_dev <= 1e-12 && common_dev <= 1e-12 && scale_dev <= 1e-10,
            fmt("shift %.3g, common curve %.3g, scale (relative) %.3g", shift_dev, common_dev,
                scale_dev)};
}

Outcome acolyte_free_cut() {
    const auto t0 = std::chrono::steady_clock::now();
    SimulationConfig config;
    config.curve_points = 2001;
    config.n_motifs = 2;
    config.sigmas = {0.5};
    config.rng_seed = 1;
    const Simulation sim = simulate(config);
    PortionSet portions(std::make_shared<const CurveSet>(sim.curves), 41);
    const DissimilarityMatrix matrix = build_matrix(portions);
    const Dendrogram tree = complete_linkage(matrix);
    const SubTreeForest forest = cut_dendrogram(tree, matrix);
    std::size_t pairs = 0, bad = 0, covered = 0;
    for (const SubTree& s : forest.subtrees) {
        covered += s.leaves.size();
        for (std::size_t i = 0; i < s.leaves.size(); ++i) {
            for (std::size_t j = i + 1; j < s.leaves.size(); ++j) {
                ++pairs;
                if (are_acolytes(portions[s.leaves[i]], portions[s.leaves[j]])) ++bad;
            }
        }
    }
    const double secs = seconds_since(t0);
    return {bad == 0 && covered == portions.size() && secs < 60.0,
            fmt("%zu sub-trees, %zu pairs checked, %zu acolyte pairs, %.1f s", forest.subtrees.size(),
                pairs, bad, secs)};
}

struct SeedResult {
    std::vector<MotifEvaluation> motifs;
    double seconds = 0.0;
};

SeedResult run_paper_seed(std::uint64_t seed, double sigma) {
    const auto t0 = std::chrono::steady_clock::now();
    SimulationConfig config;
    config.sigmas = {sigma};
    config.rng_seed = seed;
    const Simulation sim = simulate(config);
    DiscoveryOptions options;
    options.length_points = 41;
    options.min_cardinality = 6;
    options.criterion = RankCriterion::RankSum;
    const DiscoveryResult result = discover(std::make_shared<const CurveSet>(sim.curves), options);
    const EvaluationReport report = evaluate(to_reported(result.motifs, result.portions), sim.truth);
    return {report.motifs, seconds_since(t0)};
}

std::string counts_line(const std::vector<SeedResult>& seeds) {
    std::string line;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        line += (s ? " | " : "") + std::string("seed ") + std::to_string(s + 1) + ":";
        for (const auto& m : seeds[s].motifs) line += fmt(" (%zu,%zu)", m.correct, m.extra);
    }
    return line;
}

Outcome low_noise() {
    std::vector<SeedResult> seeds;
    for (std::uint64_t s = 1; s <= 5; ++s) seeds.push_back(run_paper_seed(s, 0.5));
    std::vector<double> correct, extra;
    bool each = true;
    double slowest = 0.0;
    for (const auto& r : seeds) {
        slowest = std::max(slowest, r.seconds);
        for (const auto& m : r.motifs) {
            correct.push_back(static_cast<double>(m.correct));
            extra.push_back(static_cast<double>(m.extra));
            each = each && m.correct >= 7 && m.extra <= 1;
        }
    }
    const double mc = median(correct), me = median(extra), rss = peak_rss_mb();
    const bool pass = mc == 8.0 && me == 0.0 && each && slowest < 600.0 && rss < 2048.0;
    return {pass, fmt("median correct %.1f, median extra %.1f, slowest seed %.1f s, peak %.0f MB; ", mc,
                      me, slowest, rss) +
                      counts_line(seeds)};
}

Outcome high_noise() {
    std::vector<SeedResult> seeds;
    for (std::uint64_t s = 1; s <= 5; ++s) seeds.push_back(run_paper_seed(s, 2.0));
    std::vector<double> correct;
    for (const auto& r : seeds)
        for (const auto& m : r.motifs) correct.push_back(static_cast<double>(m.correct));
    const double mc = median(correct);
    return {mc >= 5.0, fmt("median correct %.1f; ", mc) + counts_line(seeds)};
}

Outcome recommendations() {
    const std::size_t elbow =
        select_representative({{0, 5, 0.10}, {1, 7, 0.12}, {2, 9, 0.50}, {3, 12, 0.55}});
    const std::size_t fallback = select_representative({{0, 5, 0.10}, {1, 7, 0.08}, {2, 9, 0.50}});
    const std::size_t single = select_representative({{0, 6, 0.30}});
    return {elbow == 1 && fallback == 1 && single == 0,
            fmt("elbow picks index %zu, fallback picks index %zu, singleton picks index %zu", elbow,
                fallback, single)};
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "funbialign_acceptance_determinism";
    fs::remove_all(root);
    std::vector<std::string> names{"curve.json", "truth.json", "motifs.json", "dendrogram.json",
                                   "report.json"};
    std::vector<std::string> failures;
    auto pipeline = [&](const std::string& threads) {
        const fs::path dir = root / ("threads_" + threads);
        fs::create_directories(dir);
        const auto p = [&](const std::string& name) { return (dir / name).string(); };
        std::ostringstream out, err;
        const std::vector<std::vector<std::string>> steps{
            {"--threads", threads, "simulate", "--seed", "11", "--sigma", "0.5", "--out", p("curve.json"),
             "--truth", p("truth.json")},
            {"--threads", threads, "discover", "--input", p("curve.json"), "--out", p("motifs.json"),
             "--dump-dendrogram", p("dendrogram.json")},
            {"--threads", threads, "evaluate", "--motifs", p("motifs.json"), "--truth", p("truth.json"),
             "--out", p("report.json")},
            {"--threads", threads, "plot", "--motifs", p("motifs.json"), "--curves", p("curve.json"),
             "--out", p("figures")},
        };
        for (const auto& step : steps) {
            if (cli::main_entry(step, out, err) != 0) failures.push_back(step[2] + ": " + err.str());
        }
        return dir;
    };
    const fs::path a = pipeline("1");
    const fs::path b = pipeline("4");
    for (const auto& entry : fs::directory_iterator(a / "figures"))
        names.push_back("figures/" + entry.path().filename().string());
    std::size_t identical = 0;
    for (const auto& name : names) {
        if (fs::exists(a / name) && fs::exists(b / name) &&
            io::read_text(a / name) == io::read_text(b / name))
            ++identical;
        else
            failures.push_back(name + " differs");
    }
    fs::remove_all(root);
    const bool pass = failures.empty() && names.size() > 6;
    return {pass, fmt("%zu of %zu files byte-identical across 1 and 4 threads", identical, names.size()) +
                      (failures.empty() ? "" : "; " + failures.front())};
}

Outcome oracle_cross_check() {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<std::size_t> card(2, 5), len(1, 8);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix x = testing::random_matrix(rng, card(rng), len(rng), -4.0, 4.0);
        worst = std::max(worst, std::abs(fmsr(x) - testing::naive_fmsr(x)));
    }
    return {worst <= 1e-12, fmt("max |fmsr - naive| %.3g over 200 inputs", worst)};
}

} // namespace

int main() {
    const BiasTrials bias = run_bias_trials();
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"bias law ratios",
         [&] {
             return Outcome{bias.ratio_dev <= 1e-10 && bias.seconds < 5.0,
                            fmt("max relative deviation %.3g, %.2f s", bias.ratio_dev, bias.seconds)};
         }},
        {"bias removal",
         [&] {
             return Outcome{bias.adjusted_dev <= 1e-10,
                            fmt("max deviation from the pair average %.3g", bias.adjusted_dev)};
         }},
        {"ideal motifs score zero", ideal_motifs},
        {"fmsr invariances", invariances},
        {"acolyte-free cut", acolyte_free_cut},
        {"low-noise simulation", low_noise},
        {"high-noise simulation", high_noise},
        {"recommendation examples", recommendations},
        {"determinism across threads", determinism},
        {"fmsr oracle cross-check", oracle_cross_check},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %-2zu %-28s %s  %s\n", i + 1, criteria[i].first.c_str(),
                    o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
