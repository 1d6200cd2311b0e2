#include <fstream>
#include <iostream>

#include "okamoto/atlas.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_manifest <output.json>\n";
        return 64;
    }
    std::ofstream out(argv[1]);
    out << okamoto::chart_manifest_json() << '\n';
    return out ? 0 : 1;
}
