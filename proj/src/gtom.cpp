#include "gtom/gtom.hpp"

#include <algorithm>

namespace gtom {

Gtom::Gtom(BipartiteType ambient, std::vector<BipartiteType> types)
    : ambient_(std::move(ambient)), types_(std::move(types)) {
  require_type(ambient_, "ambient graph");
  if (!is_connected(ambient_)) throw PreconditionError("ambient graph must be connected and spanning");
  for (const BipartiteType& t : types_) {
    require_same_shape(ambient_, t);
    require_type(t, "type");
  }
  std::sort(types_.begin(), types_.end());
  types_.erase(std::unique(types_.begin(), types_.end()), types_.end());
  index_.insert(types_.begin(), types_.end());
}

TypeOracle::TypeOracle(const Gtom& m)
    : ambient_(m.ambient()), contains_([&m](const BipartiteType& t) { return m.contains(t); }),
      explicit_(&m.types()) {}

TypeOracle::TypeOracle(BipartiteType ambient, Membership contains)
    : ambient_(std::move(ambient)), contains_(std::move(contains)) {}

namespace {

bool fast(const CheckOptions& opt) { return opt.mode == CheckMode::kFast; }

AxiomReport finish(AxiomReport r) {
  r.holds = r.witnesses.empty();
  return r;
}

// Candidate values at position p of an eliminant of a and b.
std::vector<RightSet> choices(RightSet x, RightSet y) {
  std::vector<RightSet> out{x};
  if (y != x) out.push_back(y);
  if ((x | y) != x && (x | y) != y) out.push_back(x | y);
  return out;
}

template <class Visit>
bool enumerate_candidates(const BipartiteType& a, const BipartiteType& b, int i, Visit&& visit) {
  const int n = a.n();
  std::vector<std::vector<RightSet>> options(static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) {
    options[static_cast<std::size_t>(p - 1)] =
        p == i ? std::vector<RightSet>{a.row(p) | b.row(p)} : choices(a.row(p), b.row(p));
  }
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  std::vector<RightSet> rows(static_cast<std::size_t>(n));
  while (true) {
    for (std::size_t p = 0; p < rows.size(); ++p) rows[p] = options[p][pick[p]];
    if (!visit(BipartiteType(n, a.d(), rows))) return false;
    std::size_t p = 0;
    while (p < pick.size() && ++pick[p] == options[p].size()) pick[p++] = 0;
    if (p == pick.size()) return true;
  }
}

std::size_t candidate_count(const BipartiteType& a, const BipartiteType& b, int i) {
  std::size_t total = 1;
  for (int p = 1; p <= a.n(); ++p) {
    if (p == i) continue;
    total *= choices(a.row(p), b.row(p)).size();
    if (total > (1u << 20)) break;
  }
  return total;
}

}  // namespace

bool is_eliminant(const BipartiteType& c, const BipartiteType& a, const BipartiteType& b, int i) {
  require_same_shape(a, b);
  require_same_shape(a, c);
  for (int p = 1; p <= a.n(); ++p) {
    const RightSet x = a.row(p), y = b.row(p), z = c.row(p);
    if (p == i) {
      if (z != (x | y)) return false;
    } else if (z != x && z != y && z != (x | y)) {
      return false;
    }
  }
  return true;
}

std::vector<BipartiteType> eliminants(const TypeOracle& m, const BipartiteType& a, const BipartiteType& b, int i) {
  require_same_shape(a, b);
  if (i < 1 || i > a.n()) throw PreconditionError("position " + std::to_string(i) + " out of range");
  std::vector<BipartiteType> out;
  const auto* listed = m.explicit_types();
  if (listed != nullptr && listed->size() < candidate_count(a, b, i)) {
    for (const BipartiteType& c : *listed) {
      if (is_eliminant(c, a, b, i)) out.push_back(c);
    }
    return out;
  }
  enumerate_candidates(a, b, i, [&](BipartiteType c) {
    if (m.contains(c)) out.push_back(std::move(c));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BipartiteType> eliminants(const Gtom& m, const BipartiteType& a, const BipartiteType& b, int i) {
  if (!m.contains(a) || !m.contains(b)) throw PreconditionError("eliminants: operands must belong to the collection");
  return eliminants(TypeOracle(m), a, b, i);
}

std::optional<BipartiteType> smallest_eliminant(const TypeOracle& m, const BipartiteType& a, const BipartiteType& b,
                                                int i) {
  std::vector<BipartiteType> all = eliminants(m, a, b, i);
  if (all.empty()) return std::nullopt;
  return all.front();
}

AxiomReport check_subgraph(const Gtom& m, CheckOptions opt) {
  AxiomReport r{"Subgraph", true, {}};
  for (const BipartiteType& t : m.types()) {
    if (is_subgraph(t, m.ambient())) continue;
    Witness w;
    w.types = {t};
    for (int i = 1; i <= t.n(); ++i) {
      const RightSet extra = t.row(i) & ~m.ambient().row(i);
      if (extra != 0) {
        w.position = i;
        w.note = "edge (" + std::to_string(i) + "," + std::to_string(lowest(extra)) + ") not in ambient";
        break;
      }
    }
    r.witnesses.push_back(std::move(w));
    if (fast(opt)) break;
  }
  return finish(std::move(r));
}

AxiomReport check_generalized_boundary(const Gtom& m, CheckOptions opt) {
  AxiomReport r{"GeneralizedBoundary", true, {}};
  for (const BipartiteType& t : total_refinements(m.ambient())) {
    if (m.contains(t)) continue;
    Witness w;
    w.missing = t;
    w.note = "total refinement of ambient missing";
    r.witnesses.push_back(std::move(w));
    if (fast(opt)) break;
  }
  return finish(std::move(r));
}

AxiomReport check_surrounding(const Gtom& m, CheckOptions opt) {
  AxiomReport r{"Surrounding", true, {}};
  for (const BipartiteType& t : m.types()) {
    std::vector<BipartiteType> missing;
    auto probe = [&](const OrderedPartition& p) {
      BipartiteType refined = refine(t, p);
      if (!m.contains(refined)) missing.push_back(std::move(refined));
    };
    if (opt.surrounding == SurroundingMode::kExhaustive) {
      for_each_ordered_partition(t.d(), probe);
    } else {
      for_each_coarse_partition(t.d(), probe);
    }
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    for (BipartiteType& miss : missing) {
      Witness w;
      w.types = {t};
      w.missing = std::move(miss);
      w.note = "refinement missing";
      r.witnesses.push_back(std::move(w));
      if (fast(opt)) return finish(std::move(r));
    }
  }
  return finish(std::move(r));
}

AxiomReport check_comparability(const Gtom& m, CheckOptions opt) {
  AxiomReport r{"Comparability", true, {}};
  const auto& ts = m.types();
  for (std::size_t x = 0; x < ts.size(); ++x) {
    for (std::size_t y = x + 1; y < ts.size(); ++y) {
      if (is_compatible(ts[x], ts[y])) continue;
      Witness w;
      w.types = {ts[x], ts[y]};
      w.walk = incompatibility_witness(ts[x], ts[y]);
      w.note = "alternating closed walk outside the intersection";
      r.witnesses.push_back(std::move(w));
      if (fast(opt)) return finish(std::move(r));
    }
  }
  return finish(std::move(r));
}

AxiomReport check_elimination(const Gtom& m, CheckOptions opt) {
  AxiomReport r{"Elimination", true, {}};
  const TypeOracle oracle(m);
  const auto& ts = m.types();
  for (std::size_t x = 0; x < ts.size(); ++x) {
    for (std::size_t y = x + 1; y < ts.size(); ++y) {
      for (int i = 1; i <= m.ambient().n(); ++i) {
        if (!eliminants(oracle, ts[x], ts[y], i).empty()) continue;
        Witness w;
        w.types = {ts[x], ts[y]};
        w.position = i;
        w.note = "no eliminant";
        r.witnesses.push_back(std::move(w));
        if (fast(opt)) return finish(std::move(r));
      }
    }
  }
  return finish(std::move(r));
}

GtomVerdict is_gtom(const Gtom& m, CheckOptions opt) {
  GtomVerdict v;
  using Check = AxiomReport (*)(const Gtom&, CheckOptions);
  for (Check check : {&check_subgraph, &check_generalized_boundary, &check_surrounding, &check_comparability,
                      &check_elimination}) {
    AxiomReport rep = check(m, opt);
    v.holds = v.holds && rep.holds;
    v.reports.push_back(std::move(rep));
    if (!v.holds && fast(opt)) break;
  }
  return v;
}

}  // namespace gtom
