// Copyright 2026 The scot-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>

#include <CLI11.hpp>

#include "scot/adversary.hpp"
#include "scot/bounds.hpp"
#include "scot/cli.hpp"
#include "scot/errors.hpp"
#include "scot/io.hpp"
#include "scot/protocol.hpp"

namespace scot::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

fs::path resolve_out(const std::string& flag) {
    fs::path dir;
    if (!flag.empty()) {
        dir = flag;
    } else if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
        dir = env;
    } else {
        dir = ".";
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw InputError("cannot create output directory " + dir.string());
    }
    return dir;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

// ---------------------------------------------------------------------------

struct RunArgs {
    std::string mode = "pcc";
    int m = 2;
    int n = 4;
    int b = 0;
    double gamma = 0.0;
    double flip_rate = 0.0;
    std::string layout;
    std::uint64_t seed = 0;
    std::vector<double> theta;
    std::vector<std::string> x;
    std::string out;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    proto::Mode mode = proto::parse_mode(a.mode);
    if (a.flip_rate < 0.0 || a.flip_rate > 1.0) {
        throw InputError("--flip-rate must lie in [0, 1]");
    }
    geo::Layout layout;
    double eps = 0.0;
    if (!a.layout.empty()) {
        std::tie(layout, eps) = io::load_layout(a.layout);
    } else {
        layout = geo::default_layout(a.m);
    }
    auto validated = geo::validate_layout(std::move(layout), eps);
    if (!validated.ok()) {
        err << "invalid layout\n" << io::to_json(validated.violations).dump(2) << '\n';
        return kConfigError;
    }
    // P_SR and P_QC run BB84 on qubits; the family only matters for P_CC.
    proto::ScotConfig cfg{mode, dqacm::make_config(a.m, a.n, a.theta, a.gamma),
                          std::move(*validated.layout)};
    cfg.validate();

    dqacm::Strings x;
    if (!a.x.empty()) {
        for (const auto& s : a.x) {
            proto::Bits row;
            for (char c : s) {
                if (c != '0' && c != '1') {
                    throw InputError("--x strings must be binary");
                }
                row.push_back(c - '0');
            }
            x.push_back(row);
        }
    } else {
        qm::Rng rng(a.seed ^ 0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<int> bit(0, 1);
        const int rows = mode == proto::Mode::PSR ? 1 : a.m;
        x.assign(rows, proto::Bits(a.n));
        for (auto& row : x) {
            for (auto& v : row) {
                v = bit(rng);
            }
        }
    }
    proto::RunOptions opts;
    opts.seed = a.seed;
    opts.flip_rate = a.flip_rate;
    const auto tr = proto::run(cfg, x, a.b, opts);
    const auto check = proto::verify_transcript(tr, cfg);
    const bool correct = proto::output_correct(tr, a.gamma);

    const fs::path dir = resolve_out(a.out);
    const std::string stem = "transcript_" + a.mode + "_seed" + std::to_string(a.seed);
    json doc = io::to_json(tr);
    doc["verification"] = io::to_json(check);
    doc["output_correct"] = correct;
    io::write_json(dir / (stem + ".json"), doc);

    const std::string output = io::bits(tr.outputs.at(a.b));
    const std::vector<std::string> header{"command", "mode",   "m",       "n",
                                          "b",       "gamma",  "flip_rate", "seed",
                                          "output",  "verified", "correct", "wall_time_ms"};
    io::write_csv(dir / (stem + ".csv"), header,
                  {{"run", a.mode, std::to_string(a.m), std::to_string(a.n), std::to_string(a.b),
                    io::num(a.gamma), io::num(a.flip_rate), std::to_string(a.seed), output,
                    check.ok ? "true" : "false", correct ? "true" : "false",
                    io::num(elapsed_ms(start))}});

    out << "output " << output << '\n';
    out << "verified " << (check.ok ? "true" : "false") << '\n';
    out << "correct " << (correct ? "true" : "false") << '\n';
    for (const auto& v : check.violations) {
        err << v.kind << ": " << v.message << '\n';
    }
    return check.ok && correct ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
    std::vector<int> m{2};
    int n_min = 1;
    int n_max = 20;
    std::vector<double> theta;
    std::vector<double> gamma{0.0};
    std::string out;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
    if (a.n_min < 1 || a.n_max < a.n_min) {
        throw InputError("need 1 <= n-min <= n-max");
    }
    for (double g : a.gamma) {
        if (!(g >= 0.0 && g <= 0.5)) {
            throw InputError("gamma must lie in [0, 1/2]");
        }
    }
    const std::vector<std::string> header{"m",       "family", "n",             "gamma",
                                          "lambda",  "epsilon", "epsilon_gamma", "gamma_threshold"};
    std::vector<std::vector<std::string>> rows;
    for (int m : a.m) {
        const auto cfg = dqacm::make_config(m, 1, a.theta);
        const double lam = cfg.family.lambda();
        const std::string family = a.theta.empty() ? "equispaced" : "planar";
        for (int n = a.n_min; n <= a.n_max; ++n) {
            for (double g : a.gamma) {
                const auto rep = bounds::make_report(m, lam, n, g);
                rows.push_back({std::to_string(m), family, std::to_string(n), io::num(g),
                                io::num(rep.lambda), io::num(rep.epsilon_exact),
                                io::num(rep.epsilon_gamma), io::num(rep.gamma_threshold)});
            }
        }
    }
    const fs::path dir = resolve_out(a.out);
    io::write_csv(dir / "bounds.csv", header, rows);
    out << io::csv_line(header);
    for (const auto& r : rows) {
        out << io::csv_line(r);
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct AttackArgs {
    int m = 2;
    int n = 1;
    std::vector<double> theta;
    double gamma = 0.0;
    int restarts = 20;
    int iterations = 200;
    int ancilla = 2;
    int l0 = 0;
    int l1 = 1;
    std::uint64_t seed = 1;
    bool serial = false;
    std::string out;
};

int cmd_attack(const AttackArgs& a, std::ostream& out) {
    const auto cfg = dqacm::make_config(a.m, a.n, a.theta, a.gamma);
    adv::check_capacity(cfg, a.ancilla);
    if (a.restarts < 1 || a.iterations < 1) {
        throw InputError("--restarts and --iterations must be positive");
    }
    adv::SeesawOptions opts;
    opts.l0 = a.l0;
    opts.l1 = a.l1;
    opts.ancilla_dim = a.ancilla;
    opts.iterations = a.iterations;
    opts.restarts = a.restarts;
    opts.seed = a.seed;
    opts.exec = a.serial ? adv::Exec::Serial : adv::Exec::Parallel;
    const auto search = adv::seesaw_search(cfg, opts);
    const double lam = cfg.family.lambda();
    const double p = adv::cheat_probability_exact(cfg, search.best.strategy, opts.exec);
    const double bound = bounds::epsilon_bob(a.m, lam, a.n);
    json doc{{"m", a.m},
             {"n", a.n},
             {"lambda", lam},
             {"seed", a.seed},
             {"restarts", a.restarts},
             {"p_exact", p},
             {"bound", bound},
             {"margin", bound - p},
             {"strategy_hash", adv::strategy_hash(search.best.strategy)},
             {"restart_values", search.restart_values},
             {"trace", search.best.trace}};
    bool ok = bound - p >= -1e-9;
    if (a.gamma > 0.0) {
        const double pg =
            adv::cheat_probability_gamma(cfg, search.best.strategy, a.gamma, opts.exec);
        const double bg = bounds::epsilon_bob_gamma(a.m, lam, a.n, a.gamma);
        doc["gamma"] = a.gamma;
        doc["p_gamma"] = pg;
        doc["bound_gamma"] = bg;
        doc["margin_gamma"] = bg - pg;
        ok = ok && bg - pg >= -1e-9;
    }
    const fs::path dir = resolve_out(a.out);
    io::write_json(dir / ("attack_m" + std::to_string(a.m) + "_n" + std::to_string(a.n) + "_seed" +
                          std::to_string(a.seed) + ".json"),
                   doc);
    out << doc.dump(2) << '\n';
    return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::uint64_t seed = 1;
    int samples = 20;
    int trials = 10;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    struct Row {
        std::string check;
        std::string detail;
        double worst;
        bool ok;
    };
    std::vector<Row> rows;

    for (int m : {2, 3}) {
        for (int n : {1, 2, 3}) {
            const auto tuples = dqacm::enumerate_perm_tuples(m, n);
            std::vector<std::uint64_t> brute(n + 1, 0);
            for (const auto& v : tuples) {
                ++brute[adv::omega_weight(v, 0, 1, tuples.front(), tuples.back())];
            }
            bool ok = true;
            for (int w = 0; w <= n; ++w) {
                ok = ok && brute[w] == bounds::count_omega(m, n, w);
            }
            rows.push_back({"count_omega", "m=" + std::to_string(m) + " n=" + std::to_string(n),
                            0.0, ok});
        }
    }

    {
        const auto g = bounds::gamma_threshold(2, 0.5);
        rows.push_back({"gamma_threshold", "m=2 lambda=1/2 Gamma=" + io::num(g.gamma),
                        g.residual, g.residual < 1e-10});
    }

    for (int n : {1, 2}) {
        const auto cfg = dqacm::make_config(2, n, {std::numbers::pi / 2.0});
        const auto tuples = dqacm::enumerate_perm_tuples(2, n);
        double worst = -1.0;
        bool ok = true;
        qm::Rng rng(a.seed);
        std::uniform_int_distribution<std::size_t> pick(0, tuples.size() - 1);
        for (int k = 0; k < a.samples; ++k) {
            const auto strat = adv::random_strategy(cfg, 0, 1, 2, a.seed + k);
            for (const auto& v : tuples) {
                const auto& s = tuples[pick(rng)];
                const auto r = adv::verify_fgf_lemma(cfg, 0, 1, s, v, strat.meas0, strat.meas1);
                worst = std::max(worst, r.norm - r.bound);
                ok = ok && r.ok;
            }
        }
        rows.push_back({"fgf_norm", "m=2 n=" + std::to_string(n), worst, ok});
    }

    {
        const auto cfg = dqacm::make_config(2, 1, {std::numbers::pi / 2.0});
        const int g = static_cast<int>(adv::gamma_labels(2).size());
        double worst = 0.0;
        bool ok = true;
        for (int k = 0; k < a.trials; ++k) {
            const auto strat = adv::random_branching_strategy(cfg, 2, 1 + k % g, a.seed + k);
            const auto r = adv::verify_procedure_equivalence(cfg, strat, a.seed + 1000 + k, 4);
            worst = std::max(worst, r.max_tv);
            ok = ok && r.ok;
        }
        rows.push_back({"procedure_equivalence", "m=2 n=1", worst, ok});
    }

    bool all = true;
    out << std::left << std::setw(24) << "check" << std::setw(32) << "parameters" << std::setw(16)
        << "worst" << "result\n";
    for (const auto& r : rows) {
        out << std::setw(24) << r.check << std::setw(32) << r.detail << std::setw(16)
            << io::num(r.worst) << (r.ok ? "PASS" : "FAIL") << '\n';
        all = all && r.ok;
    }
    return all ? kOk : kVerifyFailed;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"SCOT simulator and bound verifier", "scot"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "execute one protocol run and check its transcript");
    run->add_option("--mode", ra.mode, "psr, pqc or pcc")->check(CLI::IsMember({"psr", "pqc", "pcc"}));
    run->add_option("--m", ra.m, "number of messages");
    run->add_option("--n", ra.n, "string length");
    run->add_option("--b", ra.b, "Bob's choice");
    run->add_option("--gamma", ra.gamma, "error tolerance");
    run->add_option("--flip-rate", ra.flip_rate, "i.i.d. flip rate on measurement records");
    run->add_option("--layout", ra.layout, "layout JSON file (default: symmetric 1+1D layout)");
    run->add_option("--seed", ra.seed, "random seed");
    run->add_option("--theta", ra.theta, "basis angles theta_1..theta_{m-1}");
    run->add_option("--x", ra.x, "Alice's messages as bit strings");
    run->add_option("--out", ra.out, "output directory");

    BoundsArgs ba;
    auto* bnd = app.add_subcommand("bounds", "sweep the analytic bounds");
    bnd->add_option("--m", ba.m, "values of m");
    bnd->add_option("--n-min", ba.n_min);
    bnd->add_option("--n-max", ba.n_max);
    bnd->add_option("--theta", ba.theta, "basis angles (default: equispaced family)");
    bnd->add_option("--gamma", ba.gamma, "error tolerances");
    bnd->add_option("--out", ba.out, "output directory");

    AttackArgs aa;
    auto* atk = app.add_subcommand("attack", "see-saw search for a cheating strategy");
    atk->add_option("--m", aa.m);
    atk->add_option("--n", aa.n);
    atk->add_option("--theta", aa.theta);
    atk->add_option("--gamma", aa.gamma);
    atk->add_option("--restarts", aa.restarts);
    atk->add_option("--iterations", aa.iterations);
    atk->add_option("--ancilla", aa.ancilla);
    atk->add_option("--l0", aa.l0);
    atk->add_option("--l1", aa.l1);
    atk->add_option("--seed", aa.seed);
    atk->add_flag("--serial", aa.serial, "use the serial reference kernels");
    atk->add_option("--out", aa.out, "output directory");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "run the lemma and equivalence checks");
    ver->add_option("--seed", va.seed);
    ver->add_option("--samples", va.samples);
    ver->add_option("--trials", va.trials);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (*run) {
            return cmd_run(ra, out, err);
        }
        if (*bnd) {
            return cmd_bounds(ba, out);
        }
        if (*atk) {
            return cmd_attack(aa, out);
        }
        if (*ver) {
            return cmd_verify(va, out);
        }
    } catch (const CapacityError& e) {
        err << "capacity: " << e.what() << '\n';
        return kCapacityError;
    } catch (const SchedulingError& e) {
        err << "scheduling: " << e.what() << '\n';
        return kSchedulingError;
    } catch (const InputError& e) {
        err << "config: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}

} // namespace scot::cli
