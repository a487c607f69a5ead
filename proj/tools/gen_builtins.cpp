// Regenerates the checked-in algebra files under data/ from the builtin
// definitions. Usage: gen-builtins <output-dir>
#include <iostream>

#include "dynrmat/formats.hpp"

using namespace dynrmat;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen-builtins <output-dir>\n";
        return 2;
    }
    std::string dir = argv[1];
    const char* names[] = {"sl2", "sl3", "heisenberg(1,1)", "heisenberg(2,1)", "heisenberg(2,2)", "abelian(2)"};
    const char* files[] = {"sl2.json", "sl3.json", "heisenberg_1_1.json", "heisenberg_2_1.json",
                           "heisenberg_2_2.json", "abelian_2.json"};
    for (int i = 0; i < 6; ++i) {
        BuiltinAlgebra b = builtin(names[i]);
        json j = algebra_to_json(*b.alg, b.dec);
        write_file(dir + "/" + files[i], j.dump(2) + "\n");
        std::cout << files[i] << " written\n";
    }
    return 0;
}
