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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "lqmd/io.h"
#include "reference_states.h"

namespace {

using namespace lqmd;
namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

const PlanParams kParams = PlanParams::make(8, Rational(2, 3));

struct Outcome {
    bool pass;
    std::string detail;
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("lqmd_acceptance_" + std::to_string(getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

/// Runs the CLI with `args`, sending stdout to `stdout_file`. Returns the exit status.
int run_cli(const std::string &args, const fs::path &stdout_file) {
    std::string cmd = std::string("\"") + LQMD_CLI_PATH + "\" " + args + " > \"" + stdout_file.string() + "\" 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rational json_rational(const Json &j) {
    return make_rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
}

Outcome collapse_table() {
    auto out = scratch_dir() / "c1.json";
    auto t0 = Clock::now();
    int rc = run_cli("enumerate --strategy spm --qubits 8 --out \"" + out.string() + "\"", scratch_dir() / "c1.txt");
    double elapsed = seconds_since(t0);
    if (rc != 0) {
        return {false, "enumerate exited with " + std::to_string(rc)};
    }
    auto rows = Json::parse(slurp(out));
    std::vector<int> per_level(10, 0);
    int mu_match = 0, mu_total = 0;
    for (const auto &row : rows) {
        int level = row.at("level").get<int>();
        per_level.at(level)++;
        auto cls = row.at("class").get<std::string>();
        if (cls != "MU_PLUS" && cls != "MU_MINUS") {
            continue;
        }
        mu_total++;
        // (1/(g_k T_k)) mu+- with g_k^2 = 2^(7-k); mu+- = (x|0> +- y|1>)/sqrt(2).
        Rational pre_sq = 1 / (pow2(7 - level) * lqmd_test::reference_t_sq(level));
        bool ok = json_rational(row.at("bob_amp0").at("mag_sq")) == pre_sq * Rational(2, 3) / 2 &&
                  json_rational(row.at("bob_amp1").at("mag_sq")) == pre_sq * Rational(1, 3) / 2 &&
                  row.at("bob_amp0").at("sign").get<int>() == 1 &&
                  row.at("bob_amp1").at("sign").get<int>() == (cls == "MU_PLUS" ? 1 : -1);
        mu_match += ok;
    }
    std::string census;
    for (int k = 1; k <= 8; k++) {
        census += (k > 1 ? "/" : "") + std::to_string(per_level[k]);
    }
    std::ostringstream d;
    d << rows.size() << " branches, census " << census << ", prefactors " << mu_match << "/" << mu_total
      << ", " << elapsed << " s";
    bool pass = rows.size() == 128 && census == "64/32/16/8/4/2/1/1" && mu_total == 127 && mu_match == 127 &&
                elapsed < 1.0;
    return {pass, d.str()};
}

Outcome cascade_states() {
    auto plan = spm_plan(kParams);
    auto states = lqmd_test::reference_spm_states();
    size_t hits = 0;
    std::string first_miss;
    for (const auto &s : states) {
        if (state_after(plan, kParams, s.history) == s.state()) {
            hits++;
        } else if (first_miss.empty()) {
            first_miss = ", first mismatch " + s.label;
        }
    }
    return {hits == states.size() && states.size() == 14,
            std::to_string(hits) + "/" + std::to_string(states.size()) + " states match" + first_miss};
}

Outcome probability_split() {
    auto leaves = enumerate_branches(spm_plan(kParams), kParams);
    Rational p_eta = 0, p_mu = 0;
    for (const auto &leaf : leaves) {
        (leaf.leaf_class == LeafClass::eta ? p_eta : p_mu) += leaf.probability;
    }
    Rational corr = Rational(3) / (4 * (pow2(128) - 1));
    Rational want_mu = Rational(3, 4) - corr;
    Rational want_eta = Rational(1, 4) + corr;
    Rational tol = parse_rational("1e-37");
    bool exact = p_mu == want_mu && p_eta == want_eta;
    bool rounded = abs(p_mu - Rational(3, 4)) <= tol && abs(p_eta - Rational(1, 4)) <= tol;
    return {exact && rounded, std::string("exact ") + (exact ? "yes" : "no") + ", |p - 0.75/0.25| <= 1e-37 " +
                                  (rounded ? "yes" : "no")};
}

Outcome u_check() {
    auto leaves = enumerate_branches(spm_plan(kParams), kParams);
    const BranchRecord *eta = nullptr;
    for (const auto &leaf : leaves) {
        if (leaf.leaf_class == LeafClass::eta) {
            eta = &leaf;
        }
    }
    if (eta == nullptr) {
        return {false, "no eta leaf"};
    }
    auto [p0, p1] = bob_distribution(eta->bob_state);
    Rational u = p1 / p0;
    double uf = to_double(u);
    bool exact = u == pow2(127);
    bool near = std::abs(uf - 1.7e38) <= 0.01 * 1.7e38;
    std::ostringstream d;
    d << "p1/p0 = " << (exact ? "2^127" : to_string(u)) << " = " << uf;
    return {exact && near, d.str()};
}

Outcome w_values() {
    struct Case {
        int n, l;
        double expected, tol;
    };
    const Case cases[] = {{8, 1, 1.655, 1e-3}, {8, 2, 3.43, 1e-2}, {7, 1, 0.83, 1e-2}, {6, 1, 0.41, 1e-2}};
    bool pass = true;
    std::ostringstream d;
    for (const auto &c : cases) {
        auto w = w_statistic(c.l, PlanParams::make(c.n, Rational(2, 3)), 30);
        double got = w ? to_double(*w) : NAN;
        bool ok = w && std::abs(got - c.expected) <= c.tol;
        pass = pass && ok;
        d << (&c == cases ? "" : "; ") << "n=" << c.n << " l=" << c.l << ": " << got << (ok ? "" : " (off)");
    }
    return {pass, d.str()};
}

Outcome constants() {
    auto c = plan_constants(kParams);
    auto reference = lqmd_test::reference_f_sq();
    int hits = 0;
    for (int k = 2; k <= 7; k++) {
        hits += amp_sq(c.F(k)) == reference[k - 1];
    }
    // T_7^2 = (r^64 - r^-64) / (r - r^-1) with r = 2.
    Rational telescoped = (pow2(64) - pow2(-64)) / (Rational(2) - Rational(1, 2));
    bool tele = telescoped == lqmd_test::reference_t_sq(7) && telescoped == amp_sq(c.T(7));
    return {hits == 6 && tele, std::to_string(hits) + "/6 F_k^2 exact, T_7^2 telescoping " + (tele ? "holds" : "fails")};
}

Outcome no_signaling() {
    int checked = 0, ok = 0;
    auto check = [&](const MeasurementPlan &plan, const PlanParams &p) {
        auto [p0, p1] = bob_marginal(plan, p);
        checked++;
        ok += p0 == Rational(1, 2) && p1 == Rational(1, 2);
    };
    check(cpm_plan(kParams), kParams);
    check(spm_plan(kParams), kParams);
    int random_count = 0;
    for (int n = 3; n <= 8; n++) {
        auto p = PlanParams::make(n, Rational(2, 3));
        for (int i = 0; i < 17; i++) {
            check(random_plan(p, 1000 * n + i), p);
            random_count++;
        }
    }
    return {ok == checked && random_count >= 100,
            std::to_string(ok) + "/" + std::to_string(checked) + " plans give (1/2, 1/2), " +
                std::to_string(random_count) + " random"};
}

Outcome substitute_protocol() {
    auto t0 = Clock::now();
    auto sim = scratch_dir() / "c8_sim.json";
    int rc = run_cli("simulate --strategy spm --seed 20261016 --per-group 1000 --groups 1000 --trials 1 --out \"" +
                         sim.string() + "\"",
                     scratch_dir() / "c8_sim.txt");
    if (rc != 0) {
        return {false, "simulate exited with " + std::to_string(rc)};
    }
    auto disc = scratch_dir() / "c8_disc.json";
    rc = run_cli("discriminate --seed 20261016 --trials 200 --out \"" + disc.string() + "\"", scratch_dir() / "c8_disc.txt");
    if (rc != 0) {
        return {false, "discriminate exited with " + std::to_string(rc)};
    }
    double elapsed = seconds_since(t0);
    auto s = Json::parse(slurp(sim)).at("summary");
    auto states = s.at("states").get<uint64_t>();
    double p1 = s.at("empirical_p1").get<double>();
    auto d = Json::parse(slurp(disc));
    double accuracy = d.at("accuracy").get<double>();
    double sigma = std::sqrt(0.25 / 200);
    bool p1_ok = states >= 1000000 && std::abs(p1 - 0.5) <= 0.0015;
    bool acc_ok = std::abs(accuracy - 0.5) <= 3 * sigma;
    std::ostringstream out;
    out << "W-ratio readout claim not reproducible (contradicts no-signaling); substitute: " << states
        << " states P(1) = " << p1 << ", discrimination accuracy " << accuracy << " (3 sigma = " << 3 * sigma
        << "), " << elapsed << " s";
    return {p1_ok && acc_ok && elapsed < 60.0, out.str()};
}

Outcome sampler_agreement() {
    auto plan = spm_plan(kParams);
    auto leaves = enumerate_branches(plan, kParams);
    auto probs = level_probabilities(leaves, 7);
    auto observed = sample_level_census(plan, kParams, 100000, 9);
    std::vector<uint64_t> obs(observed.begin() + 1, observed.end());
    std::vector<Rational> exp(probs.begin() + 1, probs.end());
    auto fit = chi_square_fit(obs, exp);
    std::ostringstream d;
    d << "chi2 = " << fit.statistic << ", dof " << fit.degrees_of_freedom << ", p = " << fit.p_value;
    return {fit.p_value >= 0.001 && fit.degrees_of_freedom >= 1, d.str()};
}

Outcome determinism() {
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"enumerate_json", "enumerate --strategy spm --qubits 8 --format json"},
        {"enumerate_csv", "enumerate --strategy cpm --qubits 6 --format csv"},
        {"simulate_json", "simulate --strategy random --seed 42 --trials 3 --format json"},
        {"simulate_csv", "simulate --strategy spm --seed 42 --trials 3 --format csv"},
        {"discriminate", "discriminate --seed 5 --trials 50"},
        {"verify", "verify"},
        {"marginal", "marginal --strategy random --qubits 5 --seed 3"},
    };
    int same = 0;
    std::string mismatched;
    for (const auto &[name, args] : commands) {
        std::string bodies[2];
        for (int run = 0; run < 2; run++) {
            auto file = scratch_dir() / (name + "_" + std::to_string(run) + ".out");
            auto console = scratch_dir() / (name + "_" + std::to_string(run) + ".txt");
            bool to_file = name != "marginal";
            run_cli(args + (to_file ? " --out \"" + file.string() + "\"" : ""), console);
            bodies[run] = slurp(to_file ? file : console);
        }
        if (!bodies[0].empty() && bodies[0] == bodies[1]) {
            same++;
        } else {
            mismatched += " " + name;
        }
    }
    return {same == static_cast<int>(commands.size()),
            std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical" +
                (mismatched.empty() ? "" : ", differing:" + mismatched)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"collapse table", collapse_table},
        {"cascade checkpoints", cascade_states},
        {"probability split", probability_split},
        {"u check", u_check},
        {"W values", w_values},
        {"constants", constants},
        {"no-signaling suite", no_signaling},
        {"non-reproducible readout claim", substitute_protocol},
        {"sampler/oracle agreement", sampler_agreement},
        {"determinism", determinism},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << " (" << criteria[i].first
                  << "): " << o.detail << std::endl;
    }
    fs::remove_all(scratch_dir());
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
