// Proves the storage, mixed and bandwidth facets of (5,4,4) over the
// depth-0 family and re-verifies each emitted certificate.

#include "erbound/erbound.hpp"

#include <iostream>

int main() {
    erb::Universe u = erb::Universe::build(5, 4);
    erb::SubsetFamily fam = erb::default_family(u, {}, 0);
    for (auto [a, b] : {std::pair{1, 0}, {3, 1}, {0, 1}}) {
        erb::ProvedBound pb = erb::prove(fam, {a, b});
        erb::VerifyReport rep = erb::verify(u, pb.certificate);
        std::cout << erb::BoundMeaning::from(a, b, pb.value).to_string() << "  (" << pb.certificate.rows.size()
                  << " rows, " << erb::to_string(rep.overall) << ")\n";
    }
}
