#include <doctest.h>

#include "newtonian_oracle.hpp"

TEST_CASE("newtonian constant-density step matches an independent incremental projection") {
  const oracle::NewtonianAgreement e = oracle::compare_newtonian_step(16);
  CHECK(e.u < 1e-9);
  CHECK(e.q < 1e-9);
  CHECK(e.u_hat < 1e-9);
  CHECK(e.p < 1e-9);
  CHECK(e.div_u_hat < 1e-9);
}
