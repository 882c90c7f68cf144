#include "ydcat/scenario.hpp"

#include <cstdio>
#include <iostream>

using namespace ydcat;

/** \brief Runs every criterion scenario and prints one PASS/FAIL line per criterion. */
int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : YDCAT_SCENARIO_DIR;
    const int count = 11;
    int failed = 0;
    for (int k = 1; k <= count; ++k) {
        char file[32];
        std::snprintf(file, sizeof file, "criterion%02d.json", k);
        ScenarioRunner R;
        ScenarioResult r = R.run_file((dir / file).string());
        const bool ok = r.passed();
        failed += ok ? 0 : 1;
        std::cout << "criterion " << k << " " << r.name << ": " << (ok ? "PASS" : "FAIL");
        if (!ok) {
            std::cout << " (exit " << r.exit_code << ")";
            if (!r.error.empty()) std::cout << " " << r.error;
            for (const auto& s : r.steps)
                if (s.status != "pass") {
                    std::cout << "\n    " << s.status << " " << s.op << (s.label.empty() ? "" : " [" + s.label + "]");
                    for (const auto& c : s.report.checks)
                        if (!c.passed()) std::cout << "\n      " << c.name << " residual=" << c.residual << " tol=" << c.tol;
                    for (const auto& n : s.report.notes) std::cout << "\n      note: " << n;
                }
        }
        std::cout << "\n";
    }
    std::cout << (count - failed) << "/" << count << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
