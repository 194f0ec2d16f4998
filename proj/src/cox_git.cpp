#include "chamber/cox_git.hpp"

#include "chamber/errors.hpp"
#include "chamber/linear_program.hpp"
#include "chamber/monoids.hpp"

#include <algorithm>
#include <functional>

namespace chamber {

namespace {

SupportPattern pattern_of_mask(unsigned long mask, std::size_t n) {
  SupportPattern p;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) p.push_back(i);
  return p;
}

std::vector<SupportPattern> maximal_of(const std::set<SupportPattern> &patterns) {
  std::vector<SupportPattern> out;
  for (const auto &p : patterns) {
    const bool covered = std::any_of(patterns.begin(), patterns.end(), [&](const auto &q) {
      return q.size() > p.size() && std::includes(q.begin(), q.end(), p.begin(), p.end());
    });
    if (!covered) out.push_back(p);
  }
  return out;
}

// Minimal subsets of {0..n-1} outside a downward closed family.
std::vector<SupportPattern> minimal_excluded(const std::set<SupportPattern> &patterns,
                                             std::size_t n) {
  std::vector<SupportPattern> out;
  for (const auto &p : patterns)
    for (std::size_t i = 0; i < n; ++i) {
      if (std::binary_search(p.begin(), p.end(), i)) continue;
      SupportPattern q = p;
      q.insert(std::upper_bound(q.begin(), q.end(), i), i);
      if (patterns.count(q)) continue;
      bool minimal = true;
      for (std::size_t drop = 0; drop < q.size() && minimal; ++drop) {
        SupportPattern r = q;
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(drop));
        minimal = patterns.count(r) > 0;
      }
      if (minimal) out.push_back(std::move(q));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Calls visit on every vector with max-norm exactly k, lexicographically;
// stops when visit returns true.
bool for_each_in_shell(std::size_t n, long k, const std::function<bool(const LatticeVector &)> &visit) {
  LatticeVector v(n);
  std::function<bool(std::size_t, bool)> rec = [&](std::size_t i, bool hit) -> bool {
    if (i == n) return hit && visit(v);
    for (long x = -k; x <= k; ++x) {
      const bool edge = x == k || x == -k;
      // the remaining coordinates can still reach the shell only if i < n - 1
      if (!hit && !edge && i + 1 == n) continue;
      v[i] = x;
      if (rec(i + 1, hit || edge)) return true;
    }
    return false;
  };
  if (k == 0) return visit(v);
  return rec(0, false);
}

// Same criterion in character coordinates: some rational mu has
// <mu, beta_i> <= rho_i, with equality on the pattern. Only rank-many
// variables, so this is the fast filter used by the search.
bool semistable_in_characters(const SupportPattern &pattern, const LatticeVector &rho,
                              const RayData &rd) {
  lp::System sys(rd.rank);
  for (std::size_t i = 0; i < rd.size(); ++i) {
    std::vector<Rational> c;
    for (std::size_t k = 0; k < rd.rank; ++k) c.emplace_back(rd.beta[i][k]);
    const bool vanish = std::binary_search(pattern.begin(), pattern.end(), i);
    sys.add(std::move(c), vanish ? lp::Relation::Equal : lp::Relation::LessEqual, rho[i]);
  }
  return lp::find_feasible_point(sys).has_value();
}

} // namespace

RayData ray_data(const Fan &f) {
  RayData rd;
  rd.rank = f.rank();
  std::vector<std::size_t> order(f.rays().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return f.rays()[b] < f.rays()[a]; });
  for (auto i : order) {
    rd.beta.push_back(f.rays()[i]);
    rd.fan_index.push_back(i);
  }
  return rd;
}

std::set<SupportPattern> nondegenerate_patterns(const Fan &f) {
  return nondegenerate_patterns(f, ray_data(f));
}

std::set<SupportPattern> nondegenerate_patterns(const Fan &f, const RayData &rd) {
  std::vector<std::size_t> position(f.rays().size());
  for (std::size_t i = 0; i < rd.size(); ++i) position[rd.fan_index[i]] = i;
  std::set<SupportPattern> out;
  for (auto m : f.maximal_cones()) {
    SupportPattern top;
    for (auto r : f.cones()[m]) top.push_back(position[r]);
    std::sort(top.begin(), top.end());
    for (unsigned long mask = 0; mask < (1UL << top.size()); ++mask) {
      SupportPattern p;
      for (std::size_t j = 0; j < top.size(); ++j)
        if (mask >> j & 1) p.push_back(top[j]);
      out.insert(std::move(p));
    }
  }
  out.insert({});
  return out;
}

GitWeights git_weights(const RayData &rd) {
  GitWeights w;
  w.size = rd.size();
  for (std::size_t k = 0; k < rd.rank; ++k) {
    LatticeVector v(rd.size());
    for (std::size_t i = 0; i < rd.size(); ++i) v[i] = rd.beta[i][k];
    w.l_generators.push_back(std::move(v));
  }
  w.l = describe_subgroup(w.l_generators, w.size);
  return w;
}

SemistabilityVerdict semistability(const SupportPattern &pattern, const LatticeVector &rho,
                                   const GitWeights &w) {
  if (rho.rank() != w.size) throw DimensionMismatch("linearization rank differs from |I|");
  std::vector<LatticeVector> gens;
  for (const auto &l : w.l_generators) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  for (std::size_t i = 0; i < w.size; ++i) {
    if (std::binary_search(pattern.begin(), pattern.end(), i)) continue;
    LatticeVector e(w.size);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  const AffineMonoid q(w.size, std::move(gens));
  SemistabilityVerdict v;
  v.generators = q.generators();
  if (auto cert = multiple_in_monoid(q, rho)) {
    v.semistable = true;
    v.multiple = cert->multiple;
    v.coefficients = std::move(cert->coefficients);
  }
  return v;
}

bool is_semistable(const SupportPattern &pattern, const LatticeVector &rho, const GitWeights &w) {
  return semistability(pattern, rho, w).semistable;
}

bool LinearizationResult::verified() const {
  return !transcript.empty() &&
         std::all_of(transcript.begin(), transcript.end(),
                     [](const PatternVerdict &p) { return p.nondegenerate == p.semistable; });
}

LinearizationResult find_linearization(const Fan &f, std::optional<long> box) {
  const RayData rd = ray_data(f);
  const std::size_t n = rd.size();
  if (n >= 8 * sizeof(unsigned long) - 1) throw std::invalid_argument("too many rays");
  const GitWeights w = git_weights(rd);
  const auto patterns = nondegenerate_patterns(f, rd);
  const auto must_hold = maximal_of(patterns);
  const auto must_fail = minimal_excluded(patterns, n);

  LinearizationResult result;
  result.box = box.value_or(3 * static_cast<long>(n));
  std::optional<LatticeVector> found;
  for (long k = 0; k <= result.box && !found; ++k)
    for_each_in_shell(n, k, [&](const LatticeVector &rho) {
      ++result.candidates_tried;
      for (const auto &p : must_fail)
        if (semistable_in_characters(p, rho, rd)) return false;
      for (const auto &p : must_hold)
        if (!semistable_in_characters(p, rho, rd)) return false;
      found = rho;
      return true;
    });
  if (!found)
    throw SearchExhausted("no linearization with max-norm <= " + std::to_string(result.box));
  result.rho = *found;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    PatternVerdict v;
    v.pattern = pattern_of_mask(mask, n);
    v.nondegenerate = patterns.count(v.pattern) > 0;
    const auto s = semistability(v.pattern, result.rho, w);
    v.semistable = s.semistable;
    v.multiple = s.multiple;
    result.transcript.push_back(std::move(v));
  }
  if (!result.verified())
    throw std::logic_error("linearization passed the search but failed the full transcript");
  return result;
}

} // namespace chamber
