// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [criterion ids...]

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <sys/wait.h>

#include "suites.hpp"

#ifndef LTK_CLI_PATH
#error "LTK_CLI_PATH must name the ltk executable"
#endif

namespace {

using Clock = std::chrono::steady_clock;

struct Run {
    int status;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + LTK_CLI_PATH + "\" " + args + " 2>/dev/null";
    Run r{-1, {}};
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

// CLI determinism and exit codes.
bool criterion_cli(std::string& detail) {
    const auto t0 = Clock::now();
    const Run a = run_cli("all --json --seed 1");
    const Run b = run_cli("all --json --seed 1");
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool ok = true;
    auto note = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += what + "; ";
        }
    };
    note(a.status == 0 || a.status == 1, "all exited " + std::to_string(a.status));
    note(!a.out.empty() && a.out == b.out, "all --json output differs between runs");
    note(secs < 60.0, "two runs took " + std::to_string(secs) + " s");

    const Run teich = run_cli("witt teich --p 5 --n 2 --a 2");
    note(teich.status == 0 && teich.out == "7\n", "witt teich gave '" + teich.out + "' exit " + std::to_string(teich.status));
    const Run nonlift = run_cli("theta check --p 3 --psi x^2");
    note(nonlift.status == 1, "non-lift psi exited " + std::to_string(nonlift.status));
    const Run bad = run_cli("witt teich --p 4 --n 2 --a 1");
    note(bad.status == 2, "p = 4 exited " + std::to_string(bad.status));
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
    auto wanted = [&](int id) { return only.empty() || only.count(id) > 0; };

    bool all_ok = true;
    for (const auto& c : ltk::suites::criteria()) {
        if (!wanted(c.id)) continue;
        const auto t0 = Clock::now();
        const auto report = c.run(1);
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        const bool in_budget = secs <= c.budget_seconds;
        const bool ok = report.pass() && in_budget;
        all_ok = all_ok && ok;
        std::printf("criterion %d: %s (%.2f s) %s\n", c.id, ok ? "PASS" : "FAIL", secs, c.title.c_str());
        if (!in_budget) std::printf("  over budget of %.0f s\n", c.budget_seconds);
        for (const auto& chk : report.checks)
            if (!chk.pass) std::printf("  failed check %s: %s\n", chk.name.c_str(), chk.witness.dump().c_str());
        std::fflush(stdout);
    }
    if (wanted(13)) {
        const auto t0 = Clock::now();
        std::string detail;
        const bool ok = criterion_cli(detail);
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        all_ok = all_ok && ok;
        std::printf("criterion 13: %s (%.2f s) CLI determinism and exit codes\n", ok ? "PASS" : "FAIL", secs);
        if (!ok) std::printf("  %s\n", detail.c_str());
    }
    return all_ok ? 0 : 1;
}
