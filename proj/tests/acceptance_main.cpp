#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "tfc/acceptance.hpp"
#include "tfc/cache.hpp"

namespace fs = std::filesystem;

namespace {

struct RunOutput {
    std::string out;
    int status = -1;
};

RunOutput capture(const std::string& command) {
    RunOutput r;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

void report(const tfc::CriterionResult& r) {
    std::cout << "criterion " << r.id << " " << (r.passed ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail
              << " (" << r.seconds << " s)" << std::endl;
}

}  // namespace

int main() {
    const fs::path dir = fs::temp_directory_path() / ("tfc_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cache_path = (dir / "l1.jsonl").string();

    tfc::AcceptanceOptions options;
    auto cache = std::make_shared<tfc::L1Cache>(cache_path);
    options.L1 = tfc::caching_L1_provider(cache, tfc::L1Method::ClassNumberFormula);

    int failures = 0;
    for (int id = 1; id <= tfc::kInProcessCriteria; ++id) {
        const auto r = tfc::run_criterion(id, options);
        failures += !r.passed;
        report(r);
    }

    // The in-process run above has warmed the cache; two CLI selftests in a row must agree byte for byte.
    tfc::CriterionResult det{11, "Determinism", false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const std::string cmd = quote(TFC_CLI_PATH) + " selftest --json --cache " + quote(cache_path) + " 2>/dev/null";
    const RunOutput first = capture(cmd);
    const RunOutput second = capture(cmd);
    det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool same = !first.out.empty() && first.out == second.out;
    det.passed = same && first.status == 0 && second.status == 0;
    det.detail = std::string(same ? "identical" : "different") + " selftest JSON (" + std::to_string(first.out.size()) +
                 " bytes), exit codes " + std::to_string(first.status) + " and " + std::to_string(second.status);
    failures += !det.passed;
    report(det);

    fs::remove_all(dir);
    std::cout << (tfc::kInProcessCriteria + 1 - failures) << "/" << (tfc::kInProcessCriteria + 1)
              << " acceptance criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
