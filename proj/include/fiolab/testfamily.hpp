#ifndef FIOLAB_TESTFAMILY_HPP
#define FIOLAB_TESTFAMILY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fiolab/field.hpp"
#include "fiolab/weights.hpp"

namespace fiolab {

// Probe functions for operator-norm estimation.  Members are synthesized on
// the frequency side (closed-form transforms), so they also work on
// quadrature-only grids, and are normalized to unit L^p_w norm.  Widths span
// down to the grid scale: the sharp probes are what saturates L^p norms for
// p near 1.
struct TestMember {
  std::string tag;
  SampledField field;  // physical side, unit L^p_w norm
};

struct TestFamilyConfig {
  std::uint64_t seed = 1;
  int gaussians = 6;          // centers/widths/modulations drawn from the seed
  int annular = 2;            // random-phase members per top dyadic annulus
  std::vector<double> f_mu;   // exponents of uhat = e^{-i|xi|} <xi>^{-mu}
  int indicators = 2;         // smoothed indicators, one at grid scale
  bool include_spike = true;  // one-cell indicator (discrete delta)
  bool include_dc = true;     // constant field (one-bin spectrum)
};

std::vector<TestMember> make_test_family(const Grid& g, double p, const Weight& w,
                                         const TestFamilyConfig& cfg);

// Portable uniform doubles in [0,1) from a seeded 64-bit generator; keeps
// emitted artifacts byte-identical across standard libraries.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next_u64();
  double next_double();  // [0, 1)

 private:
  std::uint64_t state_;
};

}  // namespace fiolab

#endif
