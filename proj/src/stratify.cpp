#include "lmst/stratify.hpp"

#include <algorithm>
#include <deque>

#include "lmst/cyclicity.hpp"

namespace lmst {

namespace {

void collect_constraints(const Formula& f, const StratConfig& cfg, std::vector<int>& path,
                         std::vector<AtomConstraint>& out) {
  switch (f.op) {
    case Conn::Atom: {
      long long base = f.atom == AtomKind::In ? 1 : 0;
      long long offset = base + cfg.delta_label * (f.lhs.labels - f.rhs.labels);
      out.push_back(AtomConstraint{f.lhs.var, f.rhs.var, offset, render(f), path});
      break;
    }
    case Conn::Pred:
      throw semantic_error("stratify requires primitive atoms; expand definitions first");
    default:
      for (size_t i = 0; i < f.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect_constraints(f.kids[i], cfg, path, out);
        path.pop_back();
      }
  }
}

}  // namespace

StratResult stratify(const Formula& f, const StratConfig& cfg) {
  std::vector<AtomConstraint> cons;
  std::vector<int> path;
  collect_constraints(f, cfg, path, cons);

  // variables in first-occurrence order
  std::vector<std::string> vars;
  std::map<std::string, int> idx;
  auto intern = [&](const std::string& v) {
    auto [it, fresh] = idx.emplace(v, static_cast<int>(vars.size()));
    if (fresh) vars.push_back(v);
    return it->second;
  };
  struct Arc {
    int to;
    long long offset;  // level(to) = level(from) + offset
    int con;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<std::pair<int, int>> selfcons;  // (var, constraint) with u == v
  for (size_t c = 0; c < cons.size(); ++c) {
    int u = intern(cons[c].u);
    int v = intern(cons[c].v);
    adj.resize(vars.size());
    if (u == v) {
      selfcons.emplace_back(u, static_cast<int>(c));
      continue;
    }
    adj[u].push_back(Arc{v, cons[c].offset, static_cast<int>(c)});
    adj[v].push_back(Arc{u, -cons[c].offset, static_cast<int>(c)});
  }
  adj.resize(vars.size());

  // a one-variable atom is its own cycle when the offset is nonzero
  for (auto [u, c] : selfcons) {
    (void)u;
    if (cons[c].offset != 0) {
      StratResult r;
      r.witness = StratWitness{{cons[c]}, cons[c].offset};
      return r;
    }
  }

  std::vector<long long> level(vars.size(), 0);
  std::vector<bool> seen(vars.size(), false);
  std::vector<int> parent_var(vars.size(), -1), parent_con(vars.size(), -1);
  std::vector<int> component(vars.size(), -1);
  int ncomp = 0;

  for (size_t root = 0; root < vars.size(); ++root) {
    if (seen[root]) continue;
    int comp = ncomp++;
    seen[root] = true;
    level[root] = 0;
    component[root] = comp;
    std::deque<int> queue{static_cast<int>(root)};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (const Arc& arc : adj[u]) {
        long long want = level[u] + arc.offset;
        if (!seen[arc.to]) {
          seen[arc.to] = true;
          level[arc.to] = want;
          component[arc.to] = comp;
          parent_var[arc.to] = u;
          parent_con[arc.to] = arc.con;
          queue.push_back(arc.to);
        } else if (level[arc.to] != want) {
          // contradictory cycle: tree path to..u plus this constraint
          auto chain = [&](int x) {
            std::vector<int> nodes;
            for (; x != -1; x = parent_var[x]) nodes.push_back(x);
            return nodes;
          };
          std::vector<int> cu = chain(u), cv = chain(arc.to);
          std::set<int> on_u(cu.begin(), cu.end());
          int lca = -1;
          for (int x : cv)
            if (on_u.count(x)) {
              lca = x;
              break;
            }
          StratWitness w;
          for (int x = u; x != lca; x = parent_var[x]) w.cycle.push_back(cons[parent_con[x]]);
          for (int x = arc.to; x != lca; x = parent_var[x]) w.cycle.push_back(cons[parent_con[x]]);
          w.cycle.push_back(cons[arc.con]);
          // traversing u -> to along the constraint, then to -> u along
          // the tree, offsets telescope to level(u) - level(to)
          w.offset_sum = arc.offset + (level[u] - level[arc.to]);
          StratResult r;
          r.witness = std::move(w);
          return r;
        }
      }
    }
  }

  // normalize each component to minimum level 0
  std::vector<long long> cmin(static_cast<size_t>(ncomp), 0);
  for (size_t i = 0; i < vars.size(); ++i)
    cmin[component[i]] = std::min(cmin[component[i]], level[i]);
  TypeAssignment a;
  for (size_t i = 0; i < vars.size(); ++i) a.levels[vars[i]] = level[i] - cmin[component[i]];
  StratResult r;
  r.assignment = std::move(a);
  return r;
}

AcyclicStratReport acyclic_implies_stratified_check(const std::vector<Formula>& corpus,
                                                    const StratConfig& cfg,
                                                    const DefinitionTable& defs) {
  AcyclicStratReport rep;
  rep.total = static_cast<int>(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) {
    Formula n = normalize(corpus[i], defs);
    CorpusEntry e;
    e.text = render(corpus[i]);
    e.acyclic = !is_cyclic(build_graph(n));
    e.stratified = stratify(n, cfg).stratified();
    if (e.acyclic) ++rep.acyclic;
    if (e.stratified) ++rep.stratified;
    if (e.acyclic && !e.stratified) rep.violations.push_back(static_cast<int>(i));
    rep.per_formula.push_back(std::move(e));
  }
  return rep;
}

json to_json(const StratResult& r) {
  json j;
  j["stratified"] = r.stratified();
  if (r.assignment) {
    json levels = json::object();
    for (const auto& [v, l] : r.assignment->levels) levels[v] = l;
    j["assignment"] = std::move(levels);
  }
  if (r.witness) {
    json cycle = json::array();
    for (const AtomConstraint& c : r.witness->cycle)
      cycle.push_back({{"atom", c.atom_text}, {"u", c.u}, {"v", c.v}, {"offset", c.offset}});
    j["witness"] = {{"cycle", std::move(cycle)}, {"offset_sum", r.witness->offset_sum}};
  }
  return j;
}

json to_json(const AcyclicStratReport& r) {
  json per = json::array();
  for (const CorpusEntry& e : r.per_formula)
    per.push_back({{"formula", e.text}, {"acyclic", e.acyclic}, {"stratified", e.stratified}});
  return {
      {"total", r.total},       {"acyclic", r.acyclic},         {"stratified", r.stratified},
      {"violations", r.violations}, {"per_formula", std::move(per)},
  };
}

}  // namespace lmst
