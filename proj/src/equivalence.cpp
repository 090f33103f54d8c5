#include "nullag/equivalence.hpp"

#include "nullag/errors.hpp"
#include "nullag/evaluate.hpp"
#include "nullag/print.hpp"

#include <algorithm>
#include <cmath>

namespace nullag {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::proven_equal: return "ProvenEqual";
    case Verdict::numerically_equal: return "NumericallyEqual";
    case Verdict::distinct: return "Distinct";
  }
  return "Distinct";
}

namespace {

constexpr std::size_t kClearingTermLimit = 20000;

// Largest negative exponent per base over all terms.
std::map<Expr, Rational, ExprLess> denominators(const Expr& e) {
  std::map<Expr, Rational, ExprLess> out;
  for (const auto& term : terms_of(e)) {
    for (const auto& f : factors_of(term)) {
      auto [base, q] = as_power(f);
      if (q < 0 && !base.is_constant()) {
        auto& slot = out[base];
        if (-q > slot) slot = -q;
      }
    }
  }
  return out;
}

}  // namespace

bool proven_zero(const Expr& e) {
  if (e.is_zero()) return true;
  Expr current = e;
  for (int pass = 0; pass < 2; ++pass) {
    auto dens = denominators(current);
    if (dens.empty()) return false;
    std::vector<Expr> multiplier;
    // Integer powers go in as repeated factors: pow() would expand a sum
    // base before it can cancel against the term's own negative power.
    for (const auto& [base, q] : dens) {
      if (auto k = to_long(q)) {
        for (long i = 0; i < *k; ++i) multiplier.push_back(base);
      } else {
        multiplier.push_back(pow(base, q));
      }
    }
    std::vector<Expr> cleared;
    std::size_t total = 0;
    for (const auto& term : terms_of(current)) {
      std::vector<Expr> fs = multiplier;
      fs.push_back(term);
      Expr r = mul(std::move(fs));
      total += terms_of(r).size();
      if (total > kClearingTermLimit) return false;
      cleared.push_back(std::move(r));
    }
    current = add(std::move(cleared));
    if (current.is_zero()) return true;
  }
  return false;
}

EquivalenceReport equivalent(const Expr& e1, const Expr& e2, const Domain& d, const CheckOptions& options) {
  EquivalenceReport rep;
  rep.seed = options.seed;
  rep.tolerance = options.tolerance;
  for (const auto& inst : standard_instantiations()) rep.instantiation_set.push_back(to_string(inst));

  Expr diff = e1 - e2;
  if (e1 == e2 || proven_zero(diff)) {
    rep.verdict = Verdict::proven_equal;
    return rep;
  }

  SymbolSet s1 = symbols_of(e1);
  SymbolSet s2 = symbols_of(e2);
  std::set<std::string> params = s1.params;
  params.insert(s2.params.begin(), s2.params.end());
  std::set<std::string> funcs = s1.functions;
  funcs.insert(s2.functions.begin(), s2.functions.end());
  for (const auto& g : d.guards) {
    SymbolSet sg = symbols_of(g.expr);
    params.insert(sg.params.begin(), sg.params.end());
    funcs.insert(sg.functions.begin(), sg.functions.end());
  }

  Sampler sampler(d, options.seed);
  rep.rounds = instantiation_rounds(funcs);
  rep.points = options.points;
  const int max_attempts = 20 * options.points;

  for (int round = 0; round < rep.rounds; ++round) {
    auto functions = instantiation_round(funcs, round);
    Evaluator ev1(e1, functions);
    Evaluator ev2(e2, functions);
    std::vector<double> p1(ev1.param_names().size());
    std::vector<double> p2(ev2.param_names().size());
    int accepted = 0;
    int attempts = 0;
    while (accepted < options.points) {
      if (attempts >= max_attempts) {
        throw Error(ErrorCode::infeasible_domain,
                    "only " + std::to_string(accepted) + " of " + std::to_string(options.points) +
                        " guarded sample points found");
      }
      auto drawn = sampler.draw(params, functions, max_attempts - attempts);
      if (!drawn) {
        attempts = max_attempts;
        continue;
      }
      ++attempts;
      Witness& w = drawn->second;
      for (std::size_t i = 0; i < p1.size(); ++i) p1[i] = w.params.at(ev1.param_names()[i]);
      for (std::size_t i = 0; i < p2.size(); ++i) p2[i] = w.params.at(ev2.param_names()[i]);
      double v1 = 0.0;
      double v2 = 0.0;
      try {
        v1 = ev1(w.point, p1);
        v2 = ev2(w.point, p2);
      } catch (const Error&) {
        continue;  // outside the natural domain of one side
      }
      ++accepted;
      double err = std::abs(v1 - v2) / (1.0 + std::abs(v1));
      rep.max_error = std::max(rep.max_error, err);
      if (!(err <= options.tolerance)) {
        w.lhs = v1;
        w.rhs = v2;
        rep.verdict = Verdict::distinct;
        rep.witness = w;
        return rep;
      }
    }
  }
  rep.verdict = Verdict::numerically_equal;
  return rep;
}

std::optional<Witness> find_violation(const Expr& e, const Domain& d, const CheckOptions& options,
                                      const std::function<bool(double)>& bad) {
  SymbolSet s = symbols_of(e);
  for (const auto& g : d.guards) {
    SymbolSet sg = symbols_of(g.expr);
    s.params.insert(sg.params.begin(), sg.params.end());
    s.functions.insert(sg.functions.begin(), sg.functions.end());
  }
  Sampler sampler(d, options.seed);
  for (int round = 0; round < instantiation_rounds(s.functions); ++round) {
    auto functions = instantiation_round(s.functions, round);
    Evaluator ev(e, functions);
    std::vector<double> values(ev.param_names().size());
    for (int i = 0; i < options.points; ++i) {
      auto drawn = sampler.draw(s.params, functions);
      if (!drawn) {
        throw Error(ErrorCode::infeasible_domain, "no guarded sample points found");
      }
      Witness& w = drawn->second;
      for (std::size_t k = 0; k < values.size(); ++k) values[k] = w.params.at(ev.param_names()[k]);
      double v = 0.0;
      try {
        v = ev(w.point, values);
      } catch (const Error&) {
        continue;
      }
      if (bad(v)) {
        w.lhs = v;
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace nullag
