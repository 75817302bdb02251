#include <doctest.h>

#include <random>

#include "wreathgen/errors.hpp"
#include "wreathgen/permutation.hpp"

using namespace wreathgen;

TEST_CASE("cycle notation round trip")
{
  const Permutation p = parse_permutation("(1 2 3)(4,5)", 6);
  CHECK(p(0) == 1);
  CHECK(p(2) == 0);
  CHECK(p(3) == 4);
  CHECK(p(5) == 5);
  CHECK(to_cycle_string(p) == "(1 2 3)(4 5)");
  CHECK(parse_permutation(to_cycle_string(p), 6) == p);
  CHECK(to_cycle_string(Permutation(4)).empty());
  CHECK(parse_permutation("  ", 4).is_identity());
}

TEST_CASE("composition applies the right factor first")
{
  const Permutation a = parse_permutation("(1 2)", 3);
  const Permutation b = parse_permutation("(2 3)", 3);
  // (a*b)(1) = a(b(1)) = a(1) = 2
  CHECK((a * b)(0) == 1);
  CHECK((a * b)(1) == 2);
  CHECK(compose(a, b) == a * b);
  CHECK_THROWS_AS(compose(a, Permutation(4)), DegreeMismatch);
}

TEST_CASE("parse errors carry positions")
{
  auto position_of = [](const char* text, std::size_t degree) -> std::size_t {
    try {
      parse_permutation(text, degree);
    } catch (const ParseError& e) {
      return e.position();
    }
    return 999;
  };
  CHECK(position_of("(1 2 2)", 3) == 5);
  CHECK(position_of("(1 7)", 3) == 3);
  CHECK(position_of("(1 2", 3) == 0);
  CHECK(position_of("(1)", 3) == 0);
  CHECK(position_of("(1 2)(2 3)", 3) == 6);
  CHECK(position_of("(1 (2))", 3) == 3);
  CHECK(position_of("x", 3) == 0);
}

TEST_CASE("inverse, powers, order and parity")
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> images(9);
    for (Point i = 0; i < 9; ++i)
      images[i] = i;
    std::shuffle(images.begin(), images.end(), rng);
    const Permutation p(images);
    CHECK((p * p.inverse()).is_identity());
    CHECK(p.pow(-1) == p.inverse());
    CHECK(p.pow(3) == p * p * p);
    const auto order = static_cast<std::int64_t>(p.element_order());
    CHECK(p.pow(order).is_identity());
    CHECK(commutator(p, p).is_identity());
    CHECK(conjugate(p, p) == p);
  }
  CHECK(parse_permutation("(1 2 3 4)(5 6)", 6).element_order() == 4);
  CHECK(parse_permutation("(1 2 3)", 3).is_even());
  CHECK_FALSE(parse_permutation("(1 2)", 3).is_even());
}

TEST_CASE("invalid image tables are rejected")
{
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 2}), std::invalid_argument);
}
