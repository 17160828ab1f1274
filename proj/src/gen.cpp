#include "lmst/gen.hpp"

namespace lmst {

namespace {

const char* kPool[] = {"x", "y", "z", "w"};

Term random_term(Rng& rng, int nvars, int avoid = -1) {
  int pick;
  do {
    pick = rng.below(nvars);
  } while (pick == avoid);
  int labels = 0;
  int r = rng.below(100);
  if (r >= 70) labels = r >= 95 ? 2 : 1;
  return Term{kPool[pick], labels};
}

Formula random_atom(Rng& rng, const GenConfig& cfg) {
  int nvars = cfg.max_vars < 4 ? cfg.max_vars : 4;
  Term l = random_term(rng, nvars);
  // mostly distinct endpoints so forests stay common
  bool same_ok = rng.chance(25) || nvars == 1;
  Term r = same_ok ? random_term(rng, nvars) : random_term(rng, nvars, [&] {
    for (int i = 0; i < nvars; ++i)
      if (l.var == kPool[i]) return i;
    return -1;
  }());
  int kind = rng.below(100);
  if (!cfg.allow_defined) return kind < 40 ? Formula::Eq(l, r) : Formula::In(l, r);
  if (kind < 25) return Formula::Eq(l, r);
  if (kind < 80) return Formula::In(l, r);
  if (kind < 90) return Formula::Pred("sub", {l, r});
  if (kind < 95) return Formula::Pred("psub", {l, r});
  return Formula::Pred("single", {l});
}

Formula build(Rng& rng, const GenConfig& cfg, int atoms, int depth) {
  int nvars = cfg.max_vars < 4 ? cfg.max_vars : 4;
  if (atoms <= 1) {
    Formula f = random_atom(rng, cfg);
    while (depth < 10 && rng.chance(30)) {
      if (rng.chance(50)) f = Formula::Not(std::move(f));
      else {
        std::string v = kPool[rng.below(nvars)];
        f = rng.chance(50) ? Formula::All(v, std::move(f)) : Formula::Ex(v, std::move(f));
      }
      ++depth;
    }
    return f;
  }
  int r = rng.below(100);
  if (r < 15 && depth < 10) return Formula::Not(build(rng, cfg, atoms, depth + 1));
  if (r < 30 && depth < 10) {
    std::string v = kPool[rng.below(nvars)];
    Formula body = build(rng, cfg, atoms, depth + 1);
    return rng.chance(50) ? Formula::All(v, std::move(body)) : Formula::Ex(v, std::move(body));
  }
  int left = 1 + rng.below(atoms - 1);
  Formula a = build(rng, cfg, left, depth + 1);
  Formula b = build(rng, cfg, atoms - left, depth + 1);
  switch (rng.below(10)) {
    case 0:
    case 1:
    case 2:
    case 3: return Formula::And(std::move(a), std::move(b));
    case 4:
    case 5:
    case 6: return Formula::Or(std::move(a), std::move(b));
    case 7:
    case 8: return Formula::Imp(std::move(a), std::move(b));
    default: return Formula::Iff(std::move(a), std::move(b));
  }
}

}  // namespace

Formula random_formula(Rng& rng, const GenConfig& cfg) {
  int atoms = 1 + rng.below(cfg.max_atoms);
  return build(rng, cfg, atoms, 0);
}

std::vector<Formula> generate_corpus(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<Formula> out;
  out.reserve(static_cast<size_t>(cfg.count));
  for (int i = 0; i < cfg.count; ++i) out.push_back(random_formula(rng, cfg));
  return out;
}

}  // namespace lmst
