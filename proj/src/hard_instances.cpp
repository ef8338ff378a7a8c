#include "rvmono/hard_instances.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rvmono {

int LowerBoundSpec::root() const { return static_cast<int>(std::lround(std::sqrt(static_cast<double>(d)))); }

int LowerBoundSpec::width() const { return (2 * root() + 1) / r; }

void LowerBoundSpec::validate() const {
  if (d < 1 || d > Poset::kMaxDimension || d % 2 == 0 || root() * root() != d)
    throw Error(ErrorCode::invalid_spec, "d = " + std::to_string(d) + " is not an odd perfect square");
  if (r < 1 || (2 * root() + 1) % r != 0)
    throw Error(ErrorCode::invalid_spec, "r = " + std::to_string(r) + " does not divide 2*sqrt(d)+1 = " +
                                             std::to_string(2 * root() + 1));
  if (i < 1 || i > d) throw Error(ErrorCode::invalid_spec, "coordinate i = " + std::to_string(i) + " outside [1,d]");
}

int block_index(const LowerBoundSpec& spec, int level) { return level / spec.width() + 1; }

double lower_bound_value(const LowerBoundSpec& spec, Vertex x) {
  const Vertex mask = Vertex{1} << (spec.i - 1);
  const int rest = popcount(x & ~mask);
  const int xi = (x & mask) ? 1 : 0;
  const int s = spec.root();
  const int half = (spec.d - 1) / 2;
  if (rest > half + s) return spec.r + 1;
  if (rest < half - s) return 1;
  return block_index(spec, rest - (half - s)) + 1 - xi;
}

ValuedFunction lower_bound_function(const LowerBoundSpec& spec) {
  spec.validate();
  auto dom = make_hypercube(spec.d);
  std::vector<double> v(dom->size());
  for (Vertex x = 0; x < v.size(); ++x) v[x] = lower_bound_value(spec, x);
  return ValuedFunction(std::move(dom), std::move(v));
}

Matching witness_matching(const LowerBoundSpec& spec) {
  spec.validate();
  const Vertex mask = Vertex{1} << (spec.i - 1);
  const int s = spec.root();
  const int half = (spec.d - 1) / 2;
  Matching m;
  const Vertex n = Vertex{1} << spec.d;
  for (Vertex x = 0; x < n; ++x) {
    if (x & mask) continue;
    const int rest = popcount(x);
    if (rest >= half - s && rest <= half + s) m.pairs.push_back(Edge{x, x | mask});
  }
  return m;
}

CoordinateSet cap_set(const std::vector<Vertex>& q, int c, int d) {
  if (c < 1) throw Error(ErrorCode::invalid_argument, "c must be >= 1");
  Vertex acc = 0;
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = a + 1; b < q.size(); ++b) {
      Vertex diff = q[a] ^ q[b];
      for (int k = 0; k < c && diff; ++k) {
        acc |= diff & (~diff + 1);
        diff &= diff - 1;
      }
    }
  CoordinateSet out;
  for (int i = 1; i <= d; ++i)
    if (acc & (Vertex{1} << (i - 1))) out.push_back(i);
  return out;
}

std::vector<int> violated_family_members(const std::vector<Vertex>& q, const LowerBoundSpec& spec) {
  LowerBoundSpec probe = spec;
  probe.i = 1;
  probe.validate();
  std::vector<int> out;
  for (int i = 1; i <= spec.d; ++i) {
    probe.i = i;
    bool found = false;
    for (std::size_t a = 0; a < q.size() && !found; ++a)
      for (std::size_t b = 0; b < q.size() && !found; ++b) {
        const Vertex x = q[a], y = q[b];
        if (x != y && (x & y) == x && lower_bound_value(probe, x) > lower_bound_value(probe, y)) found = true;
      }
    if (found) out.push_back(i);
  }
  return out;
}

int violation_witness_count(const std::vector<Vertex>& q, const LowerBoundSpec& spec) {
  return static_cast<int>(violated_family_members(q, spec).size());
}

}  // namespace rvmono
