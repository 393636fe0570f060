#include "bingham/tensor.hpp"

namespace bingham {

LambdaTensor project_lambda(const SymTensor2& t) {
  SymTensor2 d = deviatoric(t);
  const double norm = second_invariant(d);
  if (norm > 1.0) {
    d *= 1.0 / norm;
    // The rescaled diagonal pair can lose exact antisymmetry to rounding.
    d.yy = -d.xx;
  }
  return LambdaTensor(d);
}

}  // namespace bingham
