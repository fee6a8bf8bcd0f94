#include <doctest.h>

#include "wpvol/moduli.hpp"
#include "wpvol/rational.hpp"

using namespace wpvol;

TEST_CASE("stability and dimension") {
  CHECK(ModuliPoint{0, 3}.stable());
  CHECK(ModuliPoint{1, 1}.stable());
  CHECK(ModuliPoint{2, 0}.stable());
  CHECK_FALSE(ModuliPoint{0, 2}.stable());
  CHECK_FALSE(ModuliPoint{1, 0}.stable());
  CHECK(ModuliPoint{4, 0}.dim() == 9);
  CHECK(ModuliPoint{1, 2}.euler() == 2);
  CHECK_THROWS_AS(require_stable({0, 2}), DomainError);
  CHECK_THROWS_AS(require_stable({-1, 5}), DomainError);
}

TEST_CASE("keys are canonical under permutation") {
  IntersectionKey a{2, PsiExponents({0, 3, 1}), KappaExponents({{2, 1}, {1, 1}})};
  IntersectionKey b{2, PsiExponents({1, 0, 3}), KappaExponents::from_factors(std::vector<int>{1, 2})};
  CHECK(a == b);
  CHECK(IntersectionKeyHash{}(a) == IntersectionKeyHash{}(b));
  CHECK(to_string(a) == "g=2;psi=3,1,0;kappa=1:1,2:1");
  CHECK(a.point() == ModuliPoint{2, 3});
  CHECK(a.degree() == 7);
}

TEST_CASE("key grammar") {
  CHECK(to_string(IntersectionKey{2, PsiExponents({4}), {}}) == "g=2;psi=4;kappa=");
  CHECK(to_string(IntersectionKey{3, {}, KappaExponents(std::map<int, int>{{1, 6}})}) == "g=3;psi=;kappa=1:6");

  for (const char* text : {"g=2;psi=4;kappa=", "g=3;psi=;kappa=1:6", "g=1;psi=0,0;kappa=0:1,1:2"})
    CHECK(to_string(parse_key(text)) == text);

  for (const char* bad : {"g=1;psi=0,1;kappa=",   // not descending
                          "g=1;psi=;kappa=2:1,1:1",  // not ascending
                          "g=1;psi=;kappa=1:0",      // zero multiplicity
                          "g=01;psi=;kappa=",        // leading zero
                          "g=1;psi=-1;kappa=",       // negative
                          "g=1;kappa=;psi=",         // field order
                          "g=1;psi=1",               // missing field
                          "g=1;psi=1;kappa=1"})      // missing multiplicity
    CHECK_THROWS_AS(parse_key(bad), FormatError);
}

TEST_CASE("list parsers") {
  CHECK(parse_int_list("") == std::vector<int>{});
  CHECK(parse_int_list("3,0,12") == std::vector<int>{3, 0, 12});
  CHECK_THROWS_AS(parse_int_list("1,,2"), FormatError);
  CHECK(parse_kappa_list("1:2,2:1,1:1") == std::map<int, int>{{1, 3}, {2, 1}});
  CHECK_THROWS_AS(parse_kappa_list("1-2"), FormatError);
  CHECK_THROWS_AS(PsiExponents({1, -1}), DomainError);
}
