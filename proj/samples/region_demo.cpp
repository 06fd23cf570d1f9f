// Assembles the (5,4,4) region from the cut-set facets and two proved lines,
// then prints its corners and writes a CSV of the boundary.

#include "erbound/erbound.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    std::vector<erb::HalfPlane> hs;
    for (const auto& h : erb::cutset_facets(5, 4, 4).facets) hs.push_back(h);
    hs.emplace_back(15, 10, 6);
    hs.emplace_back(5, 10, 3);
    erb::Region2D r = erb::region_from_halfplanes(hs);

    for (const auto& h : r.halfplanes()) std::cout << h.to_string() << '\n';
    for (const auto& v : r.vertices()) std::cout << "(" << v.alpha << ", " << v.beta << ")\n";
    if (argc > 1) std::ofstream(argv[1]) << erb::emit_csv(r);
}
