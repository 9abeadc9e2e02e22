// Runs every acceptance check and prints one PASS/FAIL line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>

#include "mdd/checks.hpp"

int main(int argc, char** argv) {
    mdd::checks::Options opt;
    if (argc > 1) opt.seed = std::stoull(argv[1]);
    bool all = true;
    for (const auto& info : mdd::checks::list()) {
        mdd::checks::Result r;
        try {
            r = mdd::checks::run(info.id, opt);
        } catch (const std::exception& e) {
            r.id = info.id;
            r.name = info.name;
            r.notes.push_back(std::string("exception: ") + e.what());
        }
        std::cout << mdd::checks::summary_line(r) << std::endl;
        for (const auto& note : r.notes) std::cout << "    " << note << "\n";
        all = all && r.pass;
    }
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
