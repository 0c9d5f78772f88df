// Writes the 11+ Hauptmodul in the series text format.
//
//   T = (11 E2(11 tau) - E2(tau)) / 10 / (eta(tau)^2 eta(11 tau)^2), constant removed.
//
// The numerator is a holomorphic weight-2 form on Gamma0(11) and the
// denominator the weight-2 cusp form, so T is a modular function for
// Gamma0(11) with a simple pole at infinity; it is invariant under w_11
// because both factors pick up the same sign.

#include <fstream>
#include <iostream>

#include "haupt/catalog.hpp"
#include "haupt/error.hpp"
#include "haupt/forms.hpp"

int main(int argc, char **argv)
{
    using namespace haupt;
    if (argc != 3) {
        std::cerr << "usage: gen_11plus OUTPUT HIGH\n";
        return 2;
    }
    try {
        const long high = std::stol(argv[2]);
        const LaurentSeries e2 = eisenstein_e2(high + 1);
        const LaurentSeries e2_11 = v_m(eisenstein_e2((high + 1) / 11 + 2), 11).truncate(high + 1);
        const LaurentSeries num = scale(sub(scale(e2_11, 11), e2), mpq_class(1, 10));
        const LaurentSeries den = expand_eta_quotient(parse_eta_quotient("1^2*11^2"), high + 2);
        LaurentSeries t = mul(num, recip(den)).truncate(high);
        // the constant term is 22/5, not integral, so drop it before normalising
        t = sub(t, LaurentSeries::constant(t.coeff(0)));
        t = normalise_hauptmodul(t, "11+");
        std::ofstream out(argv[1]);
        if (!out) {
            std::cerr << "cannot write " << argv[1] << "\n";
            return 2;
        }
        out << "# source: (11 E2(11 tau) - E2(tau)) / 10 divided by eta(tau)^2 eta(11 tau)^2, constant removed;"
               " generated by tools/gen_11plus\n";
        out << to_text(t);
    } catch (const Error &e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
