#include "eqgen/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eqgen/evaluate.hpp"

namespace eqgen {

std::array<double, FeatureVector::kCount> FeatureVector::values() const {
  return {static_cast<double>(composed_transcendental),
          noninteger_power_of_transcendental ? 1.0 : 0.0,
          embedded_identity_fragment ? 1.0 : 0.0,
          static_cast<double>(node_count),
          static_cast<double>(depth),
          static_cast<double>(constant_count)};
}

bool FeatureVector::has_implausible_pattern() const {
  return composed_transcendental > 0 || noninteger_power_of_transcendental;
}

namespace {

bool is_transcendental_node(const Expr& e) { return e.symbol().is_op() && is_transcendental(e.symbol().op()); }

bool is_ground_integer(const Expr& e) {
  if (!free_variables(e).empty()) return false;
  const EvalResult r = evaluate(e, Env{});
  return r.is_finite() && std::trunc(r.value) == r.value;
}

bool is_linear_skeleton(const Expr& e, VarSet& seen) {
  const Symbol& s = e.symbol();
  if (s.is_variable()) {
    if (seen.contains(s.var())) return false;
    seen.insert(s.var());
    return true;
  }
  if (s.kind() != SymbolKind::Binary) return false;
  return is_linear_skeleton(e.child(0), seen) && is_linear_skeleton(e.child(1), seen);
}

void scan(const Expr& e, FeatureVector& f) {
  if (is_transcendental_node(e) && is_transcendental_node(e.child(0))) ++f.composed_transcendental;
  if (e.symbol().is_op() && e.symbol().op() == Op::Pow && is_transcendental_node(e.child(0)) &&
      !is_ground_integer(e.child(1))) {
    f.noninteger_power_of_transcendental = true;
  }
  if (e.symbol().is_constant()) ++f.constant_count;
  for (const auto& c : e.children()) scan(c, f);
}

bool has_embedded_fragment(const Expr& side, const std::vector<const Expr*>& patterns) {
  const auto pos = positions(side);
  for (std::size_t i = 1; i < pos.size(); ++i) {
    for (const Expr* p : patterns) {
      if (p->size() <= pos[i].expr.size() && match_pattern(*p, pos[i].expr)) return true;
    }
  }
  return false;
}

}  // namespace

bool is_distinctive_pattern(const Expr& pattern) {
  if (pattern.size() < 3) return false;
  VarSet seen;
  return !is_linear_skeleton(pattern, seen);
}

FeatureVector extract_features(const Equation& eq, const AxiomSet& ax) {
  FeatureVector f;
  scan(eq.lhs, f);
  scan(eq.rhs, f);
  f.node_count = static_cast<int>(eq.size());
  f.depth = std::max(eq.lhs.depth(), eq.rhs.depth()) + 1;

  std::vector<const Expr*> patterns;
  for (const RewriteRule* r : ax.generative_rules()) {
    for (const Expr* side : {&r->lhs, &r->rhs}) {
      if (is_distinctive_pattern(*side)) patterns.push_back(side);
    }
  }
  f.embedded_identity_fragment = has_embedded_fragment(eq.lhs, patterns) || has_embedded_fragment(eq.rhs, patterns);
  return f;
}

namespace {

struct Stump {
  double threshold = 0.0;
  bool true_above = true;
  double accuracy = 0.0;

  bool predict(double v) const { return true_above ? v > threshold : v <= threshold; }
};

Stump fit_stump(const std::vector<std::pair<double, bool>>& train) {
  std::vector<double> cuts;
  for (const auto& [v, _] : train) cuts.push_back(v);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (!cuts.empty()) cuts.insert(cuts.begin(), cuts.front() - 1.0);

  Stump best;
  best.accuracy = -1.0;
  for (double t : cuts) {
    for (bool above : {true, false}) {
      const Stump s{t, above, 0.0};
      std::size_t correct = 0;
      for (const auto& [v, label] : train) correct += s.predict(v) == label;
      const double acc = static_cast<double>(correct) / static_cast<double>(train.size());
      if (acc > best.accuracy) best = {t, above, acc};
    }
  }
  return best;
}

}  // namespace

LeakageReport leakage_report(std::span<const LabeledFeatures> data, double bound) {
  LeakageReport rep;
  rep.bound = bound;
  for (const auto& d : data) (d.label ? rep.true_count : rep.false_count) += 1;
  if (rep.true_count < 50 || rep.false_count < 50) {
    throw InsufficientData("leakage audit needs at least 50 records per class (got " +
                           std::to_string(rep.true_count) + " true, " + std::to_string(rep.false_count) + " false)");
  }

  std::size_t true_flagged = 0;
  std::size_t false_flagged = 0;
  for (const auto& d : data) (d.label ? true_flagged : false_flagged) += d.features.has_implausible_pattern();
  rep.implausible_rate_gap = std::abs(static_cast<double>(false_flagged) / static_cast<double>(rep.false_count) -
                                      static_cast<double>(true_flagged) / static_cast<double>(rep.true_count));

  std::size_t train_true = 0;
  for (std::size_t i = 0; i < data.size(); i += 2) train_true += data[i].label;
  const double train_n = static_cast<double>((data.size() + 1) / 2);
  const double base_rate = std::max(train_true / train_n, 1.0 - train_true / train_n);

  std::vector<Stump> stumps;
  for (std::size_t f = 0; f < FeatureVector::kCount; ++f) {
    FeatureStats fs;
    fs.name = FeatureVector::kNames[f];
    std::vector<std::pair<double, bool>> train;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double v = data[i].features.values()[f];
      if (data[i].label) {
        fs.true_mean += v;
        fs.true_rate += v > 0;
      } else {
        fs.false_mean += v;
        fs.false_rate += v > 0;
      }
      if (i % 2 == 0) train.emplace_back(v, data[i].label);
    }
    const auto nt = static_cast<double>(rep.true_count);
    const auto nf = static_cast<double>(rep.false_count);
    fs.true_mean /= nt;
    fs.true_rate /= nt;
    fs.false_mean /= nf;
    fs.false_rate /= nf;
    const Stump s = fit_stump(train);
    fs.threshold = s.threshold;
    fs.true_above = s.true_above;
    fs.train_accuracy = s.accuracy;
    stumps.push_back(s);
    rep.features.push_back(fs);
  }

  const auto best_single = static_cast<std::size_t>(
      std::max_element(stumps.begin(), stumps.end(),
                       [](const Stump& a, const Stump& b) { return a.accuracy < b.accuracy; }) -
      stumps.begin());

  std::size_t correct = 0;
  for (std::size_t i = 1; i < data.size(); i += 2) {
    const auto vals = data[i].features.values();
    int votes = 0;
    for (std::size_t f = 0; f < FeatureVector::kCount; ++f) {
      // A threshold no better than always guessing the larger class abstains.
      if (stumps[f].accuracy <= base_rate) continue;
      votes += stumps[f].predict(vals[f]) ? 1 : -1;
    }
    const bool prediction = votes == 0 ? stumps[best_single].predict(vals[best_single]) : votes > 0;
    correct += prediction == data[i].label;
    ++rep.eval_size;
  }
  rep.train_size = (data.size() + 1) / 2;
  rep.accuracy = static_cast<double>(correct) / static_cast<double>(rep.eval_size);
  rep.leaky = rep.accuracy > bound;
  return rep;
}

LeakageReport leakage_report(std::span<const DatasetRecord> records, const AxiomSet& ax, double bound) {
  std::vector<LabeledFeatures> data;
  data.reserve(records.size());
  for (const auto& r : records) data.push_back({extract_features(r.equation, ax), r.label});
  return leakage_report(data, bound);
}

std::string LeakageReport::to_text() const {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << "records: " << true_count << " true, " << false_count << " false (train " << train_size << ", eval "
     << eval_size << ")\n";
  os << "feature                               true-rate  false-rate  true-mean  false-mean  train-acc\n";
  for (const auto& f : features) {
    os << "  " << f.name << std::string(36 - f.name.size(), ' ') << f.true_rate << "     " << f.false_rate
       << "      " << f.true_mean << "    " << f.false_mean << "     " << f.train_accuracy << "\n";
  }
  os << "implausible-pattern rate gap: " << implausible_rate_gap << "\n";
  os << "threshold classifier eval accuracy: " << accuracy << " (bound " << bound << ") -> "
     << (leaky ? "LEAKY" : "ok") << "\n";
  return os.str();
}

std::string LeakageReport::to_key_values() const {
  std::ostringstream os;
  os.precision(17);
  os << "true_count=" << true_count << "\n"
     << "false_count=" << false_count << "\n"
     << "train_size=" << train_size << "\n"
     << "eval_size=" << eval_size << "\n";
  for (const auto& f : features) {
    os << "feature." << f.name << ".true_rate=" << f.true_rate << "\n"
       << "feature." << f.name << ".false_rate=" << f.false_rate << "\n"
       << "feature." << f.name << ".true_mean=" << f.true_mean << "\n"
       << "feature." << f.name << ".false_mean=" << f.false_mean << "\n"
       << "feature." << f.name << ".threshold=" << f.threshold << "\n"
       << "feature." << f.name << ".true_above=" << (f.true_above ? "true" : "false") << "\n"
       << "feature." << f.name << ".train_accuracy=" << f.train_accuracy << "\n";
  }
  os << "implausible_rate_gap=" << implausible_rate_gap << "\n"
     << "accuracy=" << accuracy << "\n"
     << "bound=" << bound << "\n"
     << "leaky=" << (leaky ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace eqgen
