// Renders the modular-addition cost table for every preset at a given size.

#include <iostream>

#include "qarith/resources.hpp"

using namespace qarith;

int main(int argc, char** argv) {
    uint32_t n = argc > 1 ? static_cast<uint32_t>(std::stoul(argv[1])) : 6;
    uint64_t p = argc > 2 ? std::stoull(argv[2]) : 43;
    std::cout << "modular addition, n=" << n << " p=" << p << " (|p|=" << hamming_weight(p)
              << ")\n\n";
    std::cout << render_modadd_table({"cdkpm", "gidney", "hybrid", "vbe", "draper"}, n, p);
    return 0;
}
