#include "dedekind/reduce.hpp"

#include <algorithm>
#include <deque>

#include "dedekind/lattice.hpp"
#include "dedekind/parallel.hpp"

namespace dedekind {

void Combination::add(const Rat& c, const LatticeTerm& t) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void Combination::add(const Combination& other, const Rat& factor) {
  for (const auto& [t, c] : other.terms_) add(c * factor, t);
}

std::size_t Combination::max_rank() const {
  std::size_t k = 0;
  for (const auto& [t, c] : terms_) k = std::max(k, t.rank());
  return k;
}

std::size_t ReductionStats::leaf_count() const {
  std::size_t s = 0;
  for (const auto& [k, c] : leaves_by_rank) s += c;
  return s;
}

namespace {

std::vector<IntVec> forms_of(const LatticeTerm& t) {
  std::vector<IntVec> f;
  for (const auto& b : t.blocks) f.push_back(b.form);
  return f;
}

bool spans(const std::vector<IntVec>& forms, const std::vector<std::size_t>& idx, std::size_t k) {
  std::vector<IntVec> cols;
  for (auto i : idx) cols.push_back(forms[i]);
  if (cols.size() < k) return false;
  return rank(IntMat::from_columns(cols, k)) == k;
}

void restrict_to(const LatticeTerm& t, const IntVec& normal, const std::vector<RawForm>& forms,
                 const Rat& coeff, Children& out) {
  const std::size_t k = t.rank();
  const IntMat kern = kernel_lattice(RatMat::from_rows({to_rat(normal)}, k), k);
  const IntMat basis = t.basis * kern;
  const IntMat kt = kern.transpose();
  std::vector<RawForm> nf;
  for (const auto& f : forms) nf.push_back({kt * f.form, f.mult});
  LatticeTerm child;
  Rat c = make_term(basis, nf, std::nullopt, child);
  out.emplace_back(coeff * c, std::move(child));
}

}  // namespace

Children reciprocity_split(const LatticeTerm& t, const std::vector<std::size_t>& B, const IntVec& w,
                           const std::optional<IntVec>& child_target) {
  const std::size_t k = t.rank();
  if (B.size() != k) throw std::invalid_argument("reciprocity_split needs rank-many blocks");
  const auto forms = forms_of(t);
  std::vector<IntVec> cols;
  for (auto j : B) cols.push_back(forms[j]);
  RatVec alpha;
  try {
    alpha = solve(to_rat(IntMat::from_columns(cols, k)), to_rat(w));
  } catch (const DegeneracyError&) {
    throw DegeneracyError("reciprocity_split: dependent block representatives");
  }
  const bool w_is_form = std::find(forms.begin(), forms.end(), w) != forms.end();
  Children out;
  for (std::size_t idx = 0; idx < k; ++idx) {
    if (alpha[idx] == 0) continue;
    const std::size_t j = B[idx];
    std::vector<RawForm> nf;
    for (std::size_t i = 0; i < forms.size(); ++i) {
      unsigned m = t.blocks[i].mult - (i == j ? 1 : 0);
      if (m > 0) nf.push_back({forms[i], m});
    }
    nf.push_back({w, 1});
    LatticeTerm child;
    Rat c = make_term(t.basis, nf, child_target, child);
    out.emplace_back(alpha[idx] * c, std::move(child));
    // w = f_j leaves t unchanged and w vanishes on f_j^perp
    if (t.blocks[j].mult == 1 && forms[j] != w) {
      std::vector<RawForm> rf;
      for (std::size_t i = 0; i < forms.size(); ++i)
        if (i != j) rf.push_back({forms[i], t.blocks[i].mult});
      rf.push_back({w, 1});
      restrict_to(t, forms[j], rf, -alpha[idx], out);
    }
  }
  if (!w_is_form) {
    std::vector<RawForm> rf;
    for (std::size_t i = 0; i < forms.size(); ++i) rf.push_back({forms[i], t.blocks[i].mult});
    restrict_to(t, w, rf, Rat(1), out);
  }
  return out;
}

Children diagonalize_step(const LatticeTerm& t) {
  const std::size_t k = t.rank(), s = t.blocks.size();
  if (s <= k) throw std::invalid_argument("diagonalize_step on a diagonal term");
  const auto forms = forms_of(t);
  auto all_but = [&](std::size_t x) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s; ++i)
      if (i != x) idx.push_back(i);
    return idx;
  };
  std::optional<std::size_t> target;
  if (t.target) {
    auto it = std::find(forms.begin(), forms.end(), *t.target);
    if (it != forms.end()) {
      std::size_t ti = static_cast<std::size_t>(it - forms.begin());
      if (spans(forms, all_but(ti), k)) target = ti;
    }
  }
  if (!target) {
    for (std::size_t ti = s; ti-- > 0;)
      if (spans(forms, all_but(ti), k)) {
        target = ti;
        break;
      }
  }
  if (!target) throw DegeneracyError("forms do not span: " + t.describe());
  const auto B = first_independent(forms, all_but(*target), k);
  return reciprocity_split(t, B, forms[*target], forms[*target]);
}

Children unimodularize_step(const LatticeTerm& t, UnimodStep* info) {
  const std::size_t k = t.rank();
  if (!t.is_diagonal()) throw std::invalid_argument("unimodularize_step on a non-diagonal term");
  const auto forms = forms_of(t);
  const IntMat rho = IntMat::from_columns(forms, k);
  const IntVec w = primitive_part(small_vector(rho));
  if (info) {
    info->rank = k;
    info->index = abs(det(rho));
    info->new_index = 0;
    for (std::size_t i = 0; i < k; ++i) {
      IntMat r = rho;
      r.set_col(i, w);
      info->new_index = std::max(info->new_index, BigInt(abs(det(r))));
    }
  }
  std::vector<std::size_t> B(k);
  for (std::size_t i = 0; i < k; ++i) B[i] = i;
  return reciprocity_split(t, B, w, w);
}

namespace {

// Expands terms through `step` until `terminal` holds, merging shared
// subterms.  Child lists are computed in parallel layer by layer and the
// coefficients pushed through in topological order; exact arithmetic makes
// the result independent of the schedule.
template <class Terminal, class Step>
Combination expand_dag(const Combination& roots, Terminal&& terminal, Step&& step,
                       ReductionStats* stats, unsigned threads) {
  struct Node {
    LatticeTerm term;
    bool leaf = false;
    std::vector<std::pair<Rat, std::size_t>> children;
  };
  std::vector<Node> nodes;
  std::map<LatticeTerm, std::size_t> ids;
  std::vector<std::size_t> frontier;
  auto intern = [&](const LatticeTerm& t) {
    auto [it, inserted] = ids.try_emplace(t, nodes.size());
    if (inserted) {
      nodes.push_back({t, false, {}});
      frontier.push_back(it->second);
    }
    return it->second;
  };
  std::vector<std::pair<Rat, std::size_t>> root_ids;
  for (const auto& [t, c] : roots.terms()) root_ids.emplace_back(c, intern(t));

  while (!frontier.empty()) {
    std::vector<std::size_t> layer;
    layer.swap(frontier);
    std::vector<Children> results(layer.size());
    std::vector<char> is_leaf(layer.size(), 0);
    parallel_for(layer.size(), threads, [&](std::size_t i) {
      const LatticeTerm& t = nodes[layer[i]].term;
      if (terminal(t))
        is_leaf[i] = 1;
      else
        results[i] = step(t);
    });
    for (std::size_t i = 0; i < layer.size(); ++i) {
      std::size_t id = layer[i];
      if (is_leaf[i]) {
        nodes[id].leaf = true;
        continue;
      }
      if (stats) ++stats->reciprocity_steps;
      std::vector<std::pair<Rat, std::size_t>> ch;
      for (auto& [c, t] : results[i]) {
        if (c == 0) continue;
        ch.emplace_back(c, intern(t));
      }
      nodes[id].children = std::move(ch);
    }
  }

  if (stats)
    for (const auto& n : nodes) ++stats->nodes_by_rank[n.term.rank()];

  std::vector<std::size_t> indeg(nodes.size(), 0);
  for (const auto& n : nodes)
    for (const auto& [c, ch] : n.children) ++indeg[ch];
  std::vector<Rat> acc(nodes.size(), Rat(0));
  for (const auto& [c, id] : root_ids) acc[id] += c;
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (indeg[i] == 0) ready.push_back(i);
  Combination out;
  while (!ready.empty()) {
    std::size_t id = ready.front();
    ready.pop_front();
    const Node& n = nodes[id];
    if (n.leaf) out.add(acc[id], n.term);
    for (const auto& [c, ch] : n.children) {
      if (acc[id] != 0) acc[ch] += acc[id] * c;
      if (--indeg[ch] == 0) ready.push_back(ch);
    }
  }
  return out;
}

Combination diagonalize_rank(const Combination& c, std::size_t k, ReductionStats* stats, unsigned threads) {
  return expand_dag(
      c, [k](const LatticeTerm& t) { return t.rank() < k || t.is_diagonal(); },
      [](const LatticeTerm& t) { return diagonalize_step(t); }, stats, threads);
}

// Unimodularization rounds for the diagonal rank-k terms of `diag`.
// Unimodular results go to `leaves`, lower-rank ones to `lower`.
void unimodular_rounds(Combination diag, std::size_t k, Combination& leaves, Combination& lower,
                       ReductionStats* stats, unsigned threads) {
  while (!diag.empty()) {
    std::vector<const LatticeTerm*> work;
    std::vector<Rat> coeffs;
    BigInt round_max = 0;
    for (const auto& [t, c] : diag.terms()) {
      if (t.rank() < k) {
        lower.add(c, t);
        continue;
      }
      BigInt D = t.diagonal_index();
      round_max = std::max(round_max, D);
      if (D == 1) {
        leaves.add(c, t);
      } else {
        work.push_back(&t);
        coeffs.push_back(c);
      }
    }
    if (stats && round_max > 0) stats->index_trace[k].push_back(round_max);
    if (work.empty()) break;
    std::vector<Children> results(work.size());
    std::vector<UnimodStep> info(work.size());
    parallel_for(work.size(), threads, [&](std::size_t i) { results[i] = unimodularize_step(*work[i], &info[i]); });
    Combination next;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (stats) {
        ++stats->reciprocity_steps;
        stats->unimod_steps.push_back(info[i]);
      }
      for (const auto& [c, t] : results[i]) {
        if (t.rank() < k)
          lower.add(coeffs[i] * c, t);
        else
          next.add(coeffs[i] * c, t);
      }
    }
    diag = diagonalize_rank(next, k, stats, threads);
  }
}

void split_by_rank(const Combination& c, std::size_t k, Combination& at_k, Combination& below) {
  for (const auto& [t, x] : c.terms()) (t.rank() == k ? at_k : below).add(x, t);
}

}  // namespace

Combination diagonalize(const Combination& c, ReductionStats* stats, const ReduceOptions& opt) {
  return diagonalize_rank(c, c.max_rank(), stats, opt.threads);
}

Combination unimodularize(const LatticeTerm& t, ReductionStats* stats, const ReduceOptions& opt) {
  if (!t.is_diagonal()) throw std::invalid_argument("unimodularize needs a diagonal term");
  Combination start, leaves, lower;
  start.add(1, t);
  unimodular_rounds(start, t.rank(), leaves, lower, stats, opt.threads);
  leaves.add(lower);
  return leaves;
}

Combination reduce_full(const Combination& c, ReductionStats* stats, const ReduceOptions& opt) {
  Combination pending = c, leaves;
  for (std::size_t k = c.max_rank(); k >= 1; --k) {
    Combination cur, rest;
    split_by_rank(pending, k, cur, rest);
    pending = std::move(rest);
    if (cur.empty()) continue;
    if (k == 1) {
      leaves.add(cur);
      continue;
    }
    Combination diag = diagonalize_rank(cur, k, stats, opt.threads);
    Combination at_k, lower;
    split_by_rank(diag, k, at_k, lower);
    unimodular_rounds(at_k, k, leaves, lower, stats, opt.threads);
    pending.add(lower);
  }
  if (stats)
    for (const auto& [t, x] : leaves.terms()) ++stats->leaves_by_rank[t.rank()];
  return leaves;
}

Combination reduce_full(const DedekindSum& s, ReductionStats* stats, const ReduceOptions& opt) {
  auto [c, t] = to_term(s);
  Combination start;
  start.add(c, t);
  return reduce_full(start, stats, opt);
}

Rat eval_combination(const Combination& leaves, const RatVec& v, const QForm& q, const ReduceOptions& opt) {
  std::vector<std::pair<const LatticeTerm*, Rat>> items;
  for (const auto& [t, c] : leaves.terms()) items.emplace_back(&t, c);
  std::vector<Rat> parts(items.size());
  parallel_for(items.size(), opt.threads,
               [&](std::size_t i) { parts[i] = items[i].second * eval_diagonal_term(*items[i].first, v, q); });
  Rat total = 0;
  for (const auto& p : parts) total += p;
  return total;
}

SumValue eval(const DedekindSum& s, const std::optional<QForm>& q, ReductionStats* stats,
              const ReduceOptions& opt) {
  s.validate();
  Combination leaves = reduce_full(s, stats, opt);
  unsigned w = 0;
  for (auto x : s.e) w += x;
  SumValue out{0, static_cast<int>(w)};
  if (leaves.empty()) return out;
  const QForm qq = q ? *q : QForm::generic(s.n);
  out.coeff = eval_combination(leaves, s.v, qq, opt);
  return out;
}

}  // namespace dedekind
