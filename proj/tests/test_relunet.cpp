#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "opnet/relunet.hpp"

using namespace opnet;
using namespace opnet::relu;

TEST_SUITE("relunet") {

TEST_CASE("identity pair reproduces negative inputs") {
    auto net = identity_network(1);
    CHECK(net.evaluate_scalar(-3.0) == -3.0);
    CHECK(net.evaluate_scalar(2.5) == 2.5);
    CHECK(net.depth() == 1);
    CHECK(net.width() == 2);
}

TEST_CASE("bare affine network") {
    auto net = affine_network(1, 1, {{0, 0, 2.0}}, {1.0});
    CHECK(net.evaluate_scalar(0.0) == 1.0);
    CHECK(net.evaluate_scalar(3.0) == 7.0);
    CHECK(net.depth() == 0);
}

TEST_CASE("evaluation rejects bad inputs") {
    auto net = affine_network(1, 2, {{0, 0, 1.0}, {0, 1, 1.0}}, {0.0});
    CHECK_THROWS_AS(net.evaluate({1.0}), InputError);
    CHECK_THROWS_AS(net.evaluate({1e308, 1e308}), NumericalError);
}

TEST_CASE("layer dimension mismatches are rejected at construction") {
    Layer a{2, 1, {{0, 0, 1.0}}, {0.0, 0.0}};
    Layer b{1, 3, {{0, 0, 1.0}}, {0.0}};
    CHECK_THROWS_AS(ReluNetwork({a, b}), InputError);
}

TEST_CASE("compose fuses the affine boundary") {
    auto inner = affine_network(1, 1, {{0, 0, 2.0}}, {-1.0});
    auto outer = affine_network(1, 1, {{0, 0, 3.0}}, {0.5});
    auto both = compose(outer, inner);
    CHECK(both.layers().size() == 1);
    CHECK(both.evaluate_scalar(2.0) == doctest::Approx(3.0 * (2.0 * 2.0 - 1.0) + 0.5));

    auto id2 = compose(identity_network(1), identity_network(1));
    CHECK(id2.depth() == 2);
    CHECK(id2.evaluate_scalar(-0.7) == -0.7);
}

TEST_CASE("parallel pads depth and remaps inputs") {
    auto left = identity_network(1);                          // depth 1
    auto right = compose(identity_network(1), identity_network(1));  // depth 2
    auto both = parallel({left, right}, {{1}, {0}}, 2);
    CHECK(both.depth() == 2);
    auto out = both.evaluate({5.0, -4.0});
    CHECK(out[0] == -4.0);  // left branch read input 1
    CHECK(out[1] == 5.0);   // right branch read input 0
}

TEST_CASE("size counts nonzero parameters only") {
    auto net = affine_network(2, 2, {{0, 0, 1.0}, {0, 1, 0.0}, {1, 1, 4.0}}, {0.0, 2.0});
    CHECK(net.size() == 3);  // two nonzero weights + one nonzero bias
}

TEST_CASE("serialization round-trips bit-exactly") {
    // a network with awkward values: denormals-adjacent, negatives, exact ints
    std::vector<Layer> layers;
    Layer h{3, 2,
            {{0, 0, 0.1}, {0, 1, -1.0 / 3.0}, {1, 0, 1e-17}, {2, 1, 12345.678901234567}},
            {0.0, -0.25, 3.0}};
    Layer o{1, 3, {{0, 0, 1.0}, {0, 1, -2.0}, {0, 2, 0.5}}, {1e-300}};
    ReluNetwork net({h, o});
    const std::string text = to_string(net);
    ReluNetwork back = from_string(text);
    CHECK(to_string(back) == text);
    CHECK(back.size() == net.size());
    CHECK(back.width() == net.width());
    CHECK(back.depth() == net.depth());
    for (double x : {-1.0, 0.0, 0.3, 2.0}) {
        for (double y : {-2.0, 0.5}) {
            CHECK(net.evaluate({x, y})[0] == back.evaluate({x, y})[0]);
        }
    }
}

TEST_CASE("serialization rejects malformed input") {
    CHECK_THROWS_AS(from_string("bogus v1 1\n"), InputError);
    CHECK_THROWS_AS(from_string("relu-net v2 1\n"), InputError);
    CHECK_THROWS_AS(from_string("relu-net v1 1\nlayer 1 1 1\n0 0 notanumber\nb 0\n"), InputError);
}

TEST_CASE("batched evaluation matches the scalar path") {
    auto net = compose(identity_network(2), identity_network(2));
    std::vector<double> batch = {1.0, -2.0, 0.25, 7.0, -3.5, 0.0};
    auto out = net.evaluate_batch(batch, 3);
    REQUIRE(out.size() == 6);
    for (std::size_t item = 0; item < 3; ++item) {
        auto single = net.evaluate({batch[2 * item], batch[2 * item + 1]});
        CHECK(out[2 * item] == single[0]);
        CHECK(out[2 * item + 1] == single[1]);
    }
}

}  // TEST_SUITE
