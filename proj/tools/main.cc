// Copyright 2026 The lqmd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: enumerate, simulate, discriminate, marginal, verify.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lqmd/io.h"

namespace {

using namespace lqmd;

constexpr int kUsageError = 2;
constexpr int kVerifyFailed = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    int qubits = 8;
    std::string x_sq = "2/3";

    PlanParams params() const {
        return PlanParams::make(qubits, parse_rational(x_sq));
    }
};

void add_common(CLI::App *cmd, CommonFlags &flags) {
    cmd->add_option("--qubits", flags.qubits, "Qubits per GHZ state (Alice holds all but the last)")
        ->capture_default_str();
    cmd->add_option("--x-sq", flags.x_sq, "Weight x^2 of the nu basis, as p/q or a decimal")->capture_default_str();
}

/// Relative output paths are resolved against $LQMD_OUT_DIR when it is set.
std::filesystem::path resolve_out(const std::string &out) {
    std::filesystem::path p(out);
    if (p.is_relative()) {
        if (const char *dir = std::getenv("LQMD_OUT_DIR"); dir != nullptr && *dir != '\0') {
            p = std::filesystem::path(dir) / p;
        }
    }
    return p;
}

/// Writes `content` to --out, or to stdout when no path was given.
void emit(const std::string &out, const std::string &content) {
    if (out.empty()) {
        std::cout << content;
        return;
    }
    auto path = resolve_out(out);
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    f << content;
}

struct EnumerateFlags {
    CommonFlags common;
    std::string strategy = "spm";
    std::string format = "json";
    std::string out;
};

int run_enumerate(const EnumerateFlags &flags) {
    auto params = flags.common.params();
    auto plan = flags.strategy == "cpm" ? cpm_plan(params) : spm_plan(params);
    auto leaves = enumerate_branches(plan, params);

    std::ostringstream table;
    if (flags.format == "csv") {
        write_branches_csv(table, leaves);
    } else {
        table << branches_json(leaves).dump(2) << '\n';
    }
    emit(flags.out, table.str());

    Rational total = 0;
    for (const auto &leaf : leaves) {
        total += leaf.probability;
    }
    std::ostream &summary = flags.out.empty() ? std::cerr : std::cout;
    summary << "strategy " << plan.name() << ", n=" << params.n << ", x^2=" << to_string(params.x_sq) << '\n'
            << "leaves " << leaves.size() << ", total probability " << to_string(total) << '\n'
            << "census by level " << census_string(leaves, params.alice_qubits()) << '\n';
    for (const auto &[key, count] : census(leaves)) {
        summary << "  level " << key.first << ' ' << leaf_class_name(key.second) << ' ' << count << '\n';
    }
    return 0;
}

struct ProtocolFlags {
    CommonFlags common;
    std::optional<uint64_t> seed;
    int trials = 1;
    int per_group = 30;
    int groups = 20;
    std::string strategy = "spm";
    double threshold = 1.33;
    std::string format = "json";
    std::string out;

    ProtocolConfig config() const {
        if (!seed) {
            throw UsageError("--seed is required");
        }
        ProtocolConfig c;
        c.params = common.params();
        c.seed = *seed;
        c.trials = trials;
        c.per_group = per_group;
        c.groups = groups;
        c.strategy = parse_strategy(strategy);
        c.threshold = threshold;
        c.validate();
        return c;
    }
};

void add_protocol_flags(CLI::App *cmd, ProtocolFlags &flags, bool with_strategy) {
    add_common(cmd, flags.common);
    cmd->add_option("--seed", flags.seed, "Seed of the counter-based random streams (required)");
    cmd->add_option("--trials", flags.trials, "Independent repetitions")->capture_default_str();
    cmd->add_option("--per-group", flags.per_group, "GHZ states per group")->capture_default_str();
    cmd->add_option("--groups", flags.groups, "Groups per trial")->capture_default_str();
    if (with_strategy) {
        cmd->add_option("--strategy", flags.strategy, "Alice's measurement strategy")
            ->check(CLI::IsMember({"cpm", "spm", "random"}))
            ->capture_default_str();
    }
    cmd->add_option("--threshold", flags.threshold, "Call a group SPM when ones >= threshold * zeros")
        ->capture_default_str();
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", flags.out, "Output file (stdout when omitted)");
}

int run_simulate(const ProtocolFlags &flags) {
    auto config = flags.config();
    auto trials = run_protocol(config);
    auto summary = summarize(config, trials);
    std::ostringstream body;
    if (flags.format == "csv") {
        write_groups_csv(body, trials);
    } else {
        body << protocol_json(config, trials, summary).dump(2) << '\n';
    }
    emit(flags.out, body.str());
    std::ostream &log = flags.out.empty() ? std::cerr : std::cout;
    log << "states " << summary.states << ", empirical P(1) " << summary.empirical_p1 << ", oracle P(1) "
        << to_string(summary.oracle_p1) << '\n';
    return 0;
}

int run_discriminate(const ProtocolFlags &flags) {
    auto config = flags.config();
    auto report = discriminate(config);
    std::ostringstream body;
    if (flags.format == "csv") {
        write_groups_csv(body, report.trials);
    } else {
        body << discrimination_json(config, report).dump(2) << '\n';
    }
    emit(flags.out, body.str());
    std::ostream &log = flags.out.empty() ? std::cerr : std::cout;
    const auto &c = report.confusion;
    log << "truth\\decided   cpm   spm\n"
        << "cpm           " << std::setw(5) << c[0][0] << ' ' << std::setw(5) << c[0][1] << '\n'
        << "spm           " << std::setw(5) << c[1][0] << ' ' << std::setw(5) << c[1][1] << '\n'
        << "accuracy " << report.accuracy << " (chance 0.5, sigma " << report.sigma << ", "
        << (report.within_3_sigma_of_chance ? "within" : "outside") << " 3 sigma of chance)\n";
    return 0;
}

struct MarginalFlags {
    CommonFlags common;
    std::string strategy = "spm";
    uint64_t seed = 0;
};

int run_marginal(const MarginalFlags &flags) {
    auto params = flags.common.params();
    std::optional<MeasurementPlan> plan;
    if (flags.strategy == "cpm") {
        plan = cpm_plan(params);
    } else if (flags.strategy == "spm") {
        plan = spm_plan(params);
    } else {
        plan = random_plan(params, flags.seed);
    }
    auto [p0, p1] = bob_marginal(*plan, params);
    std::cout << to_string(p0) << ' ' << to_string(p1) << '\n';
    return 0;
}

struct VerifyFlags {
    CommonFlags common;
    int random_plans = 17;
    int max_n = 8;
    uint64_t seed = 1;
    std::string out;
};

int run_verify(const VerifyFlags &flags) {
    auto report = reference_checkpoints(flags.common.params());
    auto invariants = invariant_checks(flags.random_plans, flags.max_n, flags.seed);
    report.checks.insert(report.checks.end(), invariants.checks.begin(), invariants.checks.end());
    write_report_table(std::cout, report);
    if (!flags.out.empty()) {
        emit(flags.out, report_json(report).dump(2) + "\n");
    }
    bool ok = report.all_pass();
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
    return ok ? 0 : kVerifyFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact GHZ measurement-cascade simulator and no-signaling oracle"};
    app.require_subcommand(1);

    EnumerateFlags enumerate_flags;
    auto *enumerate = app.add_subcommand("enumerate", "Write every outcome branch of a strategy with exact probabilities");
    add_common(enumerate, enumerate_flags.common);
    enumerate->add_option("--strategy", enumerate_flags.strategy, "Alice's measurement strategy")
        ->check(CLI::IsMember({"cpm", "spm"}))
        ->capture_default_str();
    enumerate->add_option("--format", enumerate_flags.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    enumerate->add_option("--out", enumerate_flags.out, "Output file (stdout when omitted)");

    ProtocolFlags simulate_flags;
    auto *simulate = app.add_subcommand("simulate", "Sample the group protocol and tally Bob's outcomes");
    add_protocol_flags(simulate, simulate_flags, true);

    ProtocolFlags discriminate_flags;
    discriminate_flags.trials = 200;
    auto *discriminate = app.add_subcommand(
        "discriminate", "Draw a hidden strategy per trial and score Bob's threshold guesses");
    add_protocol_flags(discriminate, discriminate_flags, false);

    MarginalFlags marginal_flags;
    auto *marginal = app.add_subcommand("marginal", "Print Bob's exact marginal p0 p1");
    add_common(marginal, marginal_flags.common);
    marginal->add_option("--strategy", marginal_flags.strategy, "cpm, spm, or a random adaptive plan")
        ->check(CLI::IsMember({"cpm", "spm", "random"}))
        ->capture_default_str();
    marginal->add_option("--seed", marginal_flags.seed, "Seed of the random plan")->capture_default_str();

    VerifyFlags verify_flags;
    auto *verify = app.add_subcommand("verify", "Recompute reference values and run the invariant suite");
    add_common(verify, verify_flags.common);
    verify->add_option("--random-plans", verify_flags.random_plans, "Random adaptive plans per qubit count")
        ->capture_default_str();
    verify->add_option("--max-qubits", verify_flags.max_n, "Largest qubit count in the invariant suite")
        ->capture_default_str();
    verify->add_option("--seed", verify_flags.seed, "Seed of the random plans")->capture_default_str();
    verify->add_option("--out", verify_flags.out, "Also write the report as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enumerate) {
            return run_enumerate(enumerate_flags);
        }
        if (*simulate) {
            return run_simulate(simulate_flags);
        }
        if (*discriminate) {
            return run_discriminate(discriminate_flags);
        }
        if (*marginal) {
            return run_marginal(marginal_flags);
        }
        if (*verify) {
            return run_verify(verify_flags);
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::domain_error &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kUsageError;
}
