#ifndef TTW_TEST_FIXTURES_HPP
#define TTW_TEST_FIXTURES_HPP

#include "ttw/opmatrix.hpp"

namespace ttw::testing {

inline const Realization& default_realization()
{
    static const Realization real(ModelParams{}, Truncation{});
    return real;
}

inline const Realization& fractional_realization()
{
    static const Realization real(ModelParams{0.5, 1.5, 1.5, 1.0}, Truncation::with_defaults(4, 3));
    return real;
}

}  // namespace ttw::testing

#endif
