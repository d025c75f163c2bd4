#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dws/field.hpp"

using namespace dws;

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS((GridSpec{1.0, -1.0, 11, 1.0, 4}.validate()), UsageError);
    CHECK_THROWS_AS((GridSpec{-1.0, 1.0, 1, 1.0, 4}.validate()), UsageError);
    CHECK_THROWS_AS((GridSpec{-1.0, 1.0, 11, 0.0, 4}.validate()), UsageError);
    CHECK_THROWS_AS((GridSpec{-1.0, 1.0, 11, 1.0, 0}.validate()), UsageError);
    GridSpec g{-1.0, 1.0, 11, 2.0, 8};
    g.validate();
    CHECK(g.dx() == doctest::Approx(0.2));
    CHECK(g.dt() == doctest::Approx(0.25));
}

TEST_CASE("field construction and norms") {
    GridSpec g{-1.0, 1.0, 5, 1.0, 4};
    SpaceTimeField f = make_field(g);
    CHECK(f.nx() == 5);
    CHECK(f.nt() == 4);
    // time grid is open at zero: first level is dt
    CHECK(f.ts()[0] == doctest::Approx(0.25));
    CHECK(f.ts()[3] == doctest::Approx(1.0));
    CHECK(f.sup_norm() == 0.0);
    f.u(2, 3) = -1.5;
    f.ux(1, 0) = 0.25;
    CHECK(f.sup_norm() == doctest::Approx(1.75)); // sup|u| + sup|ux|

    SpaceTimeField h = make_field(g);
    CHECK(SpaceTimeField::distance(f, h) == doctest::Approx(1.75));
    SpaceTimeField other = make_field(GridSpec{-1.0, 1.0, 7, 1.0, 4});
    CHECK_THROWS_AS(SpaceTimeField::distance(f, other), UsageError);
    CHECK_THROWS_AS(SpaceTimeField({1.0, 0.5}, {1.0}), UsageError);
}

TEST_CASE("bilinear interpolation is exact on affine data") {
    GridSpec g{0.0, 1.0, 6, 1.0, 5};
    SpaceTimeField f = make_field(g);
    for (int j = 0; j < f.nt(); ++j)
        for (int i = 0; i < f.nx(); ++i)
            f.u(j, i) = 2.0 * f.xs()[i] - 3.0 * f.ts()[j] + 0.5;
    CHECK(f.interpolate_u(0.37, 0.61) == doctest::Approx(2.0 * 0.37 - 3.0 * 0.61 + 0.5));
}

TEST_CASE("csv round trip preserves full precision") {
    GridSpec g{-0.5, 0.5, 4, 0.3, 3};
    SpaceTimeField f = make_field(g);
    for (int j = 0; j < f.nt(); ++j)
        for (int i = 0; i < f.nx(); ++i) {
            f.u(j, i) = std::sin(17.0 * (j + 1) + i) / 3.0;
            f.ux(j, i) = std::cos(11.0 * i - j) * 1e-7;
        }
    std::ostringstream os;
    f.write_csv(os);
    CHECK(os.str().rfind("x,t,u,ux\n", 0) == 0);
    std::istringstream is(os.str());
    SpaceTimeField back = SpaceTimeField::read_csv(is);
    CHECK(SpaceTimeField::distance(f, back) == 0.0); // 17 digits round-trip exactly

    std::istringstream bad("u,t\n1,2\n");
    CHECK_THROWS_AS(SpaceTimeField::read_csv(bad), UsageError);
    std::istringstream mangled("x,t,u,ux\n0,0.1,nope,0\n");
    CHECK_THROWS_AS(SpaceTimeField::read_csv(mangled), UsageError);
}

TEST_CASE("json round trip") {
    GridSpec g{-1.0, 1.0, 3, 1.0, 2};
    SpaceTimeField f = make_field(g);
    f.u(0, 1) = 0.1234567890123456789;
    f.ux(1, 2) = -9.87e-13;
    SpaceTimeField back = SpaceTimeField::from_json(f.to_json());
    CHECK(SpaceTimeField::distance(f, back) == 0.0);
    CHECK_THROWS_AS(SpaceTimeField::from_json("{\"grid\":{\"x\":[0,1],\"t\":[1]},"
                                              "\"u\":[1],\"ux\":[1,2]}"),
                    UsageError);
}
