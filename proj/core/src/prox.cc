#include "sfm/prox.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sfm/errors.h"

namespace sfm {

RestrictedFunction::RestrictedFunction(std::shared_ptr<const SetFunction> parent, Subset anchor,
                                       Subset keep)
    : parent_(std::move(parent)), anchor_(std::move(anchor)) {
  if (anchor_.universe_size() != parent_->size() || keep.universe_size() != parent_->size()) {
    throw ArgumentError("restriction: subset size mismatch");
  }
  if (!anchor_.is_subset_of(keep)) throw ArgumentError("restriction: A+ is not within A-");
  domain_ = (keep - anchor_).elements();
  anchor_value_ = parent_->evaluate(anchor_);
  reduced_ = parent_->contract(anchor_, keep);
}

double RestrictedFunction::evaluate(const Subset& b) const {
  Subset lifted = anchor_;
  for (std::size_t k = 0; k < domain_.size(); ++k) {
    if (b.contains(k)) lifted.insert(domain_[k]);
  }
  return parent_->evaluate(lifted) - anchor_value_;
}

DiscreteMinimum RestrictedFunction::minimize(std::span<const double> u) const {
  return reduced_->minimize(u);
}

std::unique_ptr<SetFunction> RestrictedFunction::contract(const Subset& anchor,
                                                          const Subset& keep) const {
  return reduced_->contract(anchor, keep);
}

std::vector<double> RestrictedFunction::greedy_base(std::span<const std::size_t> order) const {
  return reduced_->greedy_base(order);
}

std::string RestrictedFunction::name() const { return parent_->name() + "|restricted"; }

RestrictedFunction restrict_contract(std::shared_ptr<const SetFunction> f, const Subset& a_plus,
                                     const Subset& a_minus) {
  return RestrictedFunction(std::move(f), a_plus, a_minus);
}

namespace {

struct Block {
  std::unique_ptr<SetFunction> owned;
  const SetFunction* g = nullptr;
  std::vector<double> t;
  std::vector<std::size_t> index;  // position of each element in the output
  std::size_t depth = 0;
};

void check_finite(std::span<const double> t, const char* what) {
  for (double v : t) {
    if (!std::isfinite(v)) throw ArgumentError(std::string(what) + ": non-finite input");
  }
}

}  // namespace

DivideConquerResult divide_and_conquer(const SetFunction& g, std::span<const double> t) {
  const std::size_t n = g.size();
  if (t.size() != n) throw ArgumentError("divide_and_conquer: length mismatch");
  check_finite(t, "divide_and_conquer");
  DivideConquerResult out;
  out.w.assign(n, 0.0);
  out.s.s.assign(n, 0.0);
  out.s.source = BaseSource::kAssembled;
  if (n == 0) return out;

  CallCounter calls;
  std::vector<Block> stack;
  {
    Block root;
    root.g = &g;
    root.t.assign(t.begin(), t.end());
    root.index.resize(n);
    std::iota(root.index.begin(), root.index.end(), std::size_t{0});
    stack.push_back(std::move(root));
  }
  while (!stack.empty()) {
    Block block = std::move(stack.back());
    stack.pop_back();
    const std::size_t m = block.index.size();
    if (block.depth > n) throw InternalConsistencyError("divide_and_conquer: recursion deeper than |U|");

    const Subset all = Subset::full(m);
    const double g_all = block.g->evaluate(all);
    double t_sum = 0.0, t_abs = 0.0;
    for (double v : block.t) {
      t_sum += v;
      t_abs += std::abs(v);
    }
    const double level = (t_sum - g_all) / static_cast<double>(m);
    std::vector<double> u(m);
    for (std::size_t k = 0; k < m; ++k) u[k] = block.t[k] - level;
    DiscreteMinimum split = block.g->minimize(u);
    calls.add();

    // Both the empty set and the whole block have value 0 at this level; any
    // strictly better set is a proper split.
    const double tol = 1e-12 * (1.0 + std::abs(g_all) + t_abs);
    const std::size_t card = split.set.count();
    if (card == 0 || card == m || split.value >= -tol) {
      for (std::size_t k = 0; k < m; ++k) {
        out.w[block.index[k]] = level;
        out.s.s[block.index[k]] = split.certificate.s[k];
      }
      continue;
    }

    const Subset& inner = split.set;
    Block head, tail;
    head.owned = block.g->contract(Subset(m), inner);
    tail.owned = block.g->contract(inner, all);
    head.g = head.owned.get();
    tail.g = tail.owned.get();
    head.depth = tail.depth = block.depth + 1;
    for (std::size_t k = 0; k < m; ++k) {
      Block& side = inner.contains(k) ? head : tail;
      side.t.push_back(block.t[k]);
      side.index.push_back(block.index[k]);
    }
    stack.push_back(std::move(tail));
    stack.push_back(std::move(head));
  }
  out.sfmd_calls = calls.value();
  return out;
}

ProxResult constrained_tv(const SetFunction& f, std::span<const double> t, EpsilonBox box) {
  const std::size_t n = f.size();
  if (t.size() != n) throw ArgumentError("constrained_tv: length mismatch");
  check_finite(t, "constrained_tv");
  ProxResult out;
  if (box.is_infinite()) {
    DivideConquerResult dc = divide_and_conquer(f, t);
    out.w = std::move(dc.w);
    out.s = std::move(dc.s);
    out.sfmd_calls = dc.sfmd_calls;
  } else {
    const double eps = box.epsilon;
    if (!(eps > 0.0)) throw ArgumentError("constrained_tv: epsilon must be positive");
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = t[j] - eps;
    DiscreteMinimum plus = f.minimize(u);
    for (std::size_t j = 0; j < n; ++j) u[j] = t[j] + eps;
    DiscreteMinimum minus = f.minimize(u);
    out.sfmd_calls = 2;
    if (!plus.set.is_subset_of(minus.set)) {
      throw InternalConsistencyError("constrained_tv: A+ is not contained in A-");
    }
    out.w.assign(n, 0.0);
    out.s.s.assign(n, 0.0);
    out.s.source = BaseSource::kAssembled;
    for (std::size_t j = 0; j < n; ++j) {
      if (plus.set.contains(j)) {
        out.w[j] = eps;
        out.s.s[j] = plus.certificate.s[j];
      } else if (!minus.set.contains(j)) {
        out.w[j] = -eps;
        out.s.s[j] = minus.certificate.s[j];
      }
    }
    const Subset free = minus.set - plus.set;
    if (!free.empty()) {
      const auto g = f.contract(plus.set, minus.set);
      const auto domain = free.elements();
      std::vector<double> t_free(domain.size());
      for (std::size_t k = 0; k < domain.size(); ++k) t_free[k] = t[domain[k]];
      DivideConquerResult dc = divide_and_conquer(*g, t_free);
      out.sfmd_calls += dc.sfmd_calls;
      const double slack = 1e-9 * (1.0 + eps);
      for (std::size_t k = 0; k < domain.size(); ++k) {
        if (std::abs(dc.w[k]) > eps + slack) {
          throw InternalConsistencyError("constrained_tv: interior value outside the box");
        }
        out.w[domain[k]] = std::clamp(dc.w[k], -eps, eps);
        out.s.s[domain[k]] = dc.s.s[k];
      }
    }
    out.a_plus = std::move(plus.set);
    out.a_minus = std::move(minus.set);
  }

  out.primal_value = greedy_lovasz(f, out.w).value;
  out.dual_value = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out.primal_value += psi(out.w[j], box) - t[j] * out.w[j];
    out.dual_value -= psi_conj(t[j] - out.s.s[j], box);
  }
  const double scale = 1.0 + std::abs(out.primal_value);
  if (!(std::abs(out.primal_value - out.dual_value) <= 1e-6 * scale)) {
    throw InternalConsistencyError("constrained_tv: primal and dual values disagree");
  }
  return out;
}

std::size_t count_distinct_levels(std::span<const double> w, double tol) {
  if (w.empty()) return 0;
  std::vector<double> sorted(w.begin(), w.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t levels = 1;
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k] - sorted[k - 1] > tol) ++levels;
  }
  return levels;
}

}  // namespace sfm
