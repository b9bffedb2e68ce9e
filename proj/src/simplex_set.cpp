#include "simplexflow/simplex_set.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "simplexflow/combinations.hpp"
#include "simplexflow/errors.hpp"

namespace simplexflow {

namespace {

std::string describe(std::span<const std::size_t> tuple) {
  std::string s = "(";
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(tuple[k] + 1);
  }
  return s + ")";
}

IndexTuple canonical(std::span<const std::size_t> tuple, std::size_t particles,
                     std::size_t arity) {
  if (tuple.size() != arity) {
    throw ValidationError("tuple " + describe(tuple) + " has arity " +
                          std::to_string(tuple.size()) + ", expected " + std::to_string(arity));
  }
  IndexTuple sorted(tuple.begin(), tuple.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] >= particles) {
      throw ValidationError("tuple " + describe(tuple) + " has an index outside [1," +
                            std::to_string(particles) + "]");
    }
    if (k > 0 && sorted[k] == sorted[k - 1]) {
      throw ValidationError("tuple " + describe(tuple) + " repeats an index");
    }
  }
  return sorted;
}

}  // namespace

SimplexSet::SimplexSet(std::size_t particles, std::size_t order,
                       std::vector<IndexTuple> sorted_unique)
    : particles_(particles), order_(order), neighborhoods_(particles) {
  simplices_.reserve(sorted_unique.size() * (order + 1));
  std::set<IndexTuple> base_set;
  for (const auto& s : sorted_unique) {
    simplices_.insert(simplices_.end(), s.begin(), s.end());
    for (std::size_t drop = 0; drop <= order; ++drop) {
      IndexTuple base;
      base.reserve(order);
      for (std::size_t k = 0; k <= order; ++k) {
        if (k != drop) base.push_back(s[k]);
      }
      base_set.insert(std::move(base));
    }
  }

  std::map<IndexTuple, std::size_t> base_id;
  bases_.reserve(base_set.size() * order);
  for (const auto& b : base_set) {
    base_id.emplace(b, base_id.size());
    bases_.insert(bases_.end(), b.begin(), b.end());
  }

  IndexTuple base(order);
  for (const auto& s : sorted_unique) {
    for (std::size_t drop = 0; drop <= order; ++drop) {
      std::size_t slot = 0;
      for (std::size_t k = 0; k <= order; ++k) {
        if (k != drop) base[slot++] = s[k];
      }
      neighborhoods_[s[drop]].push_back(base_id.at(base));
    }
  }
  for (auto& nb : neighborhoods_) std::sort(nb.begin(), nb.end());
}

SimplexSet SimplexSet::symmetric_closure(std::span<const IndexTuple> raw, std::size_t particles,
                                         std::size_t order) {
  if (order == 0) throw ValidationError("simplex order must be at least 1");
  std::set<IndexTuple> unique;
  for (const auto& t : raw) unique.insert(canonical(t, particles, order + 1));
  return SimplexSet(particles, order, {unique.begin(), unique.end()});
}

SimplexSet SimplexSet::full_set(std::size_t particles, std::size_t order) {
  if (order == 0) throw ValidationError("simplex order must be at least 1");
  if (particles < order + 1) {
    throw ValidationError("full set needs N >= n+1 (N=" + std::to_string(particles) +
                          ", n=" + std::to_string(order) + ")");
  }
  std::vector<IndexTuple> all;
  all.reserve(binomial(particles, order + 1));
  IndexTuple c(order + 1);
  for (std::size_t k = 0; k <= order; ++k) c[k] = k;
  do {
    all.push_back(c);
  } while (next_combination(c, particles));
  return SimplexSet(particles, order, std::move(all));
}

SimplexSet SimplexSet::base_point_set(std::span<const IndexTuple> bases, std::size_t particles) {
  if (bases.empty()) throw ValidationError("base point set needs at least one base");
  const std::size_t order = bases.front().size();
  if (order == 0) throw ValidationError("base tuples must be nonempty");
  std::set<IndexTuple> unique;
  for (const auto& raw_base : bases) {
    const auto base = canonical(raw_base, particles, order);
    for (std::size_t i = 0; i < particles; ++i) {
      if (std::binary_search(base.begin(), base.end(), i)) continue;
      IndexTuple s = base;
      s.insert(std::upper_bound(s.begin(), s.end(), i), i);
      unique.insert(std::move(s));
    }
  }
  return SimplexSet(particles, order, {unique.begin(), unique.end()});
}

std::uint64_t SimplexSet::ordered_size() const {
  return factorial(order_ + 1) * simplex_count();
}

std::uint64_t SimplexSet::neighborhood_size(std::size_t i) const {
  return factorial(order_) * neighborhoods_.at(i).size();
}

std::vector<std::string> validate(const SimplexSet& set) {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < set.particles(); ++i) {
    if (set.neighborhood(i).empty()) {
      problems.push_back("S_" + std::to_string(i + 1) + " empty: particle " +
                         std::to_string(i + 1) + " belongs to no simplex");
    }
  }
  return problems;
}

std::vector<std::string> closure_violations(std::span<const IndexTuple> raw) {
  std::set<IndexTuple> present(raw.begin(), raw.end());
  std::vector<std::string> problems;
  std::set<IndexTuple> reported;
  for (const auto& t : raw) {
    IndexTuple key = t;
    std::sort(key.begin(), key.end());
    if (reported.count(key)) continue;
    IndexTuple perm = key;
    do {
      if (!present.count(perm)) {
        problems.push_back("permutation " + describe(perm) + " of " + describe(t) +
                           " missing");
        reported.insert(key);
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return problems;
}

}  // namespace simplexflow
