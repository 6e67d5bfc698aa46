#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "loadcast/errors.hpp"

namespace loadcast {

struct Triangular {
  double a, b, c;
};
struct Trapezoidal {
  double a, b, c, d;
};
struct Gaussian {
  double center, sigma;
};
struct Bell {
  double center, width, slope;
};

using MembershipFunction = std::variant<Triangular, Trapezoidal, Gaussian, Bell>;

enum class MfShape { triangular, trapezoidal, gaussian, bell };

inline const char* mf_shape_name(MfShape s) {
  switch (s) {
    case MfShape::triangular: return "triangular";
    case MfShape::trapezoidal: return "trapezoidal";
    case MfShape::gaussian: return "gaussian";
    case MfShape::bell: return "bell";
  }
  return "unknown";
}

inline void validate_mf(const MembershipFunction& mf) {
  if (const auto* t = std::get_if<Triangular>(&mf)) {
    if (!(t->a <= t->b && t->b <= t->c && t->a < t->c))
      raise(Errc::invalid_config, "triangular breakpoints must satisfy a <= b <= c, a < c");
  } else if (const auto* t = std::get_if<Trapezoidal>(&mf)) {
    if (!(t->a <= t->b && t->b <= t->c && t->c <= t->d && t->a < t->d))
      raise(Errc::invalid_config, "trapezoid breakpoints must satisfy a <= b <= c <= d, a < d");
  } else if (const auto* g = std::get_if<Gaussian>(&mf)) {
    if (!(g->sigma > 0.0)) raise(Errc::invalid_config, "gaussian sigma must be positive");
  } else if (const auto* b = std::get_if<Bell>(&mf)) {
    if (!(b->width > 0.0 && b->slope > 0.0))
      raise(Errc::invalid_config, "bell width and slope must be positive");
  }
}

// Triangular follows the piecewise definition with the peak case first, so
// degenerate shoulders (a == b or b == c) still score 1 at the peak.
inline double membership(const MembershipFunction& mf, double x) {
  if (const auto* t = std::get_if<Triangular>(&mf)) {
    if (x == t->b) return 1.0;
    if (x > t->a && x < t->b) return (x - t->a) / (t->b - t->a);
    if (x > t->b && x < t->c) return (t->c - x) / (t->c - t->b);
    return 0.0;
  }
  if (const auto* t = std::get_if<Trapezoidal>(&mf)) {
    if (x >= t->b && x <= t->c) return 1.0;
    if (x > t->a && x < t->b) return (x - t->a) / (t->b - t->a);
    if (x > t->c && x < t->d) return (t->d - x) / (t->d - t->c);
    return 0.0;
  }
  if (const auto* g = std::get_if<Gaussian>(&mf)) {
    const double z = (x - g->center) / g->sigma;
    return std::exp(-0.5 * z * z);
  }
  const auto& b = std::get<Bell>(mf);
  const double z = std::fabs((x - b.center) / b.width);
  return 1.0 / (1.0 + std::pow(z, 2.0 * b.slope));
}

struct LinguisticVariable {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::pair<std::string, MembershipFunction>> terms;

  int term_index(const std::string& label) const {
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (terms[i].first == label) return static_cast<int>(i);
    return -1;
  }

  double clamp(double x) const { return std::clamp(x, lo, hi); }
};

inline std::vector<double> fuzzify(const LinguisticVariable& var, double x) {
  const double cx = var.clamp(x);
  std::vector<double> degrees;
  degrees.reserve(var.terms.size());
  for (const auto& [label, mf] : var.terms) degrees.push_back(membership(mf, cx));
  return degrees;
}

inline double term_degree(const LinguisticVariable& var, int term, double x) {
  return membership(var.terms[term].second, var.clamp(x));
}

// Evenly spaced partition with peaks at k*(hi-lo)/(m-1). Triangular terms
// foot at the neighboring peaks (partition of unity); the end terms peak at
// the bounds. Gaussian sigma is spacing/2.355 so neighbors cross at 0.5;
// bell and trapezoid cross at the half-spacing point likewise.
inline LinguisticVariable make_partition(const std::string& name, double lo, double hi,
                                         const std::vector<std::string>& labels, MfShape shape) {
  if (labels.size() < 2) raise(Errc::too_few_labels, "a partition needs at least 2 labels");
  if (!(hi > lo)) raise(Errc::invalid_config, "universe must have hi > lo");

  LinguisticVariable var;
  var.name = name;
  var.lo = lo;
  var.hi = hi;

  const int m = static_cast<int>(labels.size());
  const double spacing = (hi - lo) / (m - 1);
  for (int k = 0; k < m; ++k) {
    const double peak = lo + k * spacing;
    MembershipFunction mf;
    switch (shape) {
      case MfShape::triangular: {
        const double left = k == 0 ? peak : peak - spacing;
        const double right = k == m - 1 ? peak : peak + spacing;
        mf = Triangular{left, peak, right};
        break;
      }
      case MfShape::trapezoidal: {
        const double quarter = spacing / 4.0;
        const double a = std::max(lo, peak - 3.0 * quarter);
        const double b = k == 0 ? lo : peak - quarter;
        const double c = k == m - 1 ? hi : peak + quarter;
        const double d = std::min(hi, peak + 3.0 * quarter);
        mf = Trapezoidal{a, b, c, d};
        break;
      }
      case MfShape::gaussian:
        mf = Gaussian{peak, spacing / 2.355};
        break;
      case MfShape::bell:
        mf = Bell{peak, spacing / 2.0, 2.5};
        break;
    }
    validate_mf(mf);
    var.terms.emplace_back(labels[k], mf);
  }
  return var;
}

struct MamdaniRule {
  std::vector<std::pair<std::string, std::string>> antecedent;  // (variable, label)
  std::pair<std::string, std::string> consequent;               // (variable, label)
};

struct TsRule {
  std::vector<std::pair<std::string, std::string>> antecedent;
  std::vector<double> coefficients;  // q0, then one per antecedent variable
};

using VariableSet = std::vector<LinguisticVariable>;
using CrispInputs = std::map<std::string, double>;

namespace detail {

inline const LinguisticVariable& find_variable(const VariableSet& vars, const std::string& name) {
  for (const auto& v : vars)
    if (v.name == name) return v;
  raise(Errc::invalid_config, "unknown variable '" + name + "'");
}

inline double crisp_value(const CrispInputs& inputs, const std::string& name) {
  const auto it = inputs.find(name);
  if (it == inputs.end()) raise(Errc::invalid_config, "missing input for variable '" + name + "'");
  return it->second;
}

// Rule truth value: min over antecedent membership degrees.
template <typename Rule>
double firing_strength(const Rule& rule, const VariableSet& vars, const CrispInputs& inputs) {
  if (rule.antecedent.empty()) raise(Errc::invalid_config, "rule antecedent is empty");
  double w = 1.0;
  for (const auto& [var_name, label] : rule.antecedent) {
    const LinguisticVariable& var = find_variable(vars, var_name);
    const int term = var.term_index(label);
    if (term < 0)
      raise(Errc::invalid_config, "variable '" + var_name + "' has no term '" + label + "'");
    w = std::min(w, term_degree(var, term, crisp_value(inputs, var_name)));
  }
  return w;
}

inline constexpr int defuzz_points = 201;

}  // namespace detail

// Mamdani inference: min firing, min implication, max aggregation, centroid
// defuzzification over a 201-point discretization of the output universe.
inline double mamdani_infer(const std::vector<MamdaniRule>& rules, const VariableSet& vars,
                            const CrispInputs& inputs, const LinguisticVariable& output_var) {
  if (rules.empty()) raise(Errc::no_rule_fired, "rule base is empty");

  std::vector<double> strength(rules.size(), 0.0);
  std::vector<int> cons_term(rules.size(), -1);
  double strongest = 0.0;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const MamdaniRule& rule = rules[r];
    if (rule.consequent.first != output_var.name)
      raise(Errc::invalid_config, "consequent variable '" + rule.consequent.first +
                                      "' is not the output variable");
    cons_term[r] = output_var.term_index(rule.consequent.second);
    if (cons_term[r] < 0)
      raise(Errc::invalid_config, "output variable has no term '" + rule.consequent.second + "'");
    strength[r] = detail::firing_strength(rule, vars, inputs);
    strongest = std::max(strongest, strength[r]);
  }
  if (!(strongest > 0.0)) raise(Errc::no_rule_fired, "no rule fired with positive degree");

  const double step = (output_var.hi - output_var.lo) / (detail::defuzz_points - 1);
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < detail::defuzz_points; ++k) {
    const double y = output_var.lo + k * step;
    double mu = 0.0;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      if (strength[r] <= mu) continue;  // min(w, .) cannot exceed w
      mu = std::max(mu, std::min(strength[r], term_degree(output_var, cons_term[r], y)));
    }
    num += y * mu;
    den += mu;
  }
  if (!(den > 0.0)) raise(Errc::no_rule_fired, "aggregated set has zero area");
  return num / den;
}

// Takagi-Sugeno inference: firing-strength weighted average of the linear
// rule consequents f_i = q0 + sum_j qj * input_j.
inline double ts_infer(const std::vector<TsRule>& rules, const VariableSet& vars,
                       const CrispInputs& inputs) {
  if (rules.empty()) raise(Errc::all_rules_zero, "rule base is empty");
  double weighted = 0.0;
  double total = 0.0;
  for (const TsRule& rule : rules) {
    if (rule.coefficients.size() != rule.antecedent.size() + 1)
      raise(Errc::invalid_config, "coefficient count must be antecedent size + 1");
    const double w = detail::firing_strength(rule, vars, inputs);
    double f = rule.coefficients[0];
    for (std::size_t j = 0; j < rule.antecedent.size(); ++j)
      f += rule.coefficients[j + 1] * detail::crisp_value(inputs, rule.antecedent[j].first);
    weighted += w * f;
    total += w;
  }
  if (!(total > 0.0)) raise(Errc::all_rules_zero, "every rule fired with degree zero");
  return weighted / total;
}

// Rule induction from data: each sample votes for its max-degree term per
// variable (ties to the lower index); duplicate antecedents keep the rule
// whose sample had the highest product of degrees.
inline std::vector<MamdaniRule> generate_rules(
    const std::vector<std::pair<CrispInputs, double>>& samples, const VariableSet& vars,
    const LinguisticVariable& output_var) {
  if (samples.empty()) raise(Errc::empty_input, "no samples for rule induction");

  struct Candidate {
    MamdaniRule rule;
    double degree_product;
  };
  std::map<std::vector<int>, Candidate> best;

  for (const auto& [inputs, output] : samples) {
    MamdaniRule rule;
    std::vector<int> key;
    double product = 1.0;
    for (const LinguisticVariable& var : vars) {
      const auto degrees = fuzzify(var, detail::crisp_value(inputs, var.name));
      const int pick = static_cast<int>(std::max_element(degrees.begin(), degrees.end()) -
                                        degrees.begin());
      product *= degrees[pick];
      key.push_back(pick);
      rule.antecedent.emplace_back(var.name, var.terms[pick].first);
    }
    const auto out_degrees = fuzzify(output_var, output);
    const int out_pick = static_cast<int>(
        std::max_element(out_degrees.begin(), out_degrees.end()) - out_degrees.begin());
    product *= out_degrees[out_pick];
    rule.consequent = {output_var.name, output_var.terms[out_pick].first};

    const auto it = best.find(key);
    if (it == best.end() || product > it->second.degree_product)
      best[key] = Candidate{std::move(rule), product};
  }

  std::vector<MamdaniRule> rules;
  rules.reserve(best.size());
  for (auto& [key, cand] : best) rules.push_back(std::move(cand.rule));
  return rules;
}

// ---------------------------------------------------------------------------
// Rule base text format, one rule per line:
//   IF load IS VL AND temp IS C THEN out IS L
//   IF load IS VL AND temp IS C THEN f = 0.5 + 0.25*load + -1*temp
// Coefficients are printed with 17 significant digits so parsing round-trips
// bit-exactly.

inline std::string format_rule(const MamdaniRule& rule) {
  std::string out = "IF ";
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
    if (i > 0) out += " AND ";
    out += rule.antecedent[i].first + " IS " + rule.antecedent[i].second;
  }
  out += " THEN " + rule.consequent.first + " IS " + rule.consequent.second;
  return out;
}

inline std::string format_rule(const TsRule& rule) {
  char num[40];
  std::string out = "IF ";
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
    if (i > 0) out += " AND ";
    out += rule.antecedent[i].first + " IS " + rule.antecedent[i].second;
  }
  std::snprintf(num, sizeof num, "%.17g", rule.coefficients[0]);
  out += " THEN f = ";
  out += num;
  for (std::size_t j = 0; j + 1 < rule.coefficients.size(); ++j) {
    std::snprintf(num, sizeof num, "%.17g", rule.coefficients[j + 1]);
    out += " + ";
    out += num;
    out += "*" + rule.antecedent[j].first;
  }
  return out;
}

template <typename Rule>
std::string format_rules(const std::vector<Rule>& rules) {
  std::string out;
  for (const auto& r : rules) {
    out += format_rule(r);
    out += '\n';
  }
  return out;
}

struct ParsedRules {
  std::vector<MamdaniRule> mamdani;
  std::vector<TsRule> ts;
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace detail

inline ParsedRules parse_rules(const std::string& text) {
  ParsedRules parsed;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tokens = detail::tokenize(line);
    const std::string where = "rule line " + std::to_string(line_no);
    if (tokens.size() < 6 || tokens[0] != "IF") raise(Errc::bad_rule_text, where);

    std::vector<std::pair<std::string, std::string>> antecedent;
    std::size_t pos = 1;
    while (true) {
      if (pos + 2 >= tokens.size() || tokens[pos + 1] != "IS")
        raise(Errc::bad_rule_text, where + ": expected '<var> IS <label>'");
      antecedent.emplace_back(tokens[pos], tokens[pos + 2]);
      pos += 3;
      if (pos >= tokens.size()) raise(Errc::bad_rule_text, where + ": missing THEN");
      if (tokens[pos] == "AND") {
        ++pos;
        continue;
      }
      if (tokens[pos] == "THEN") {
        ++pos;
        break;
      }
      raise(Errc::bad_rule_text, where + ": expected AND or THEN, got '" + tokens[pos] + "'");
    }

    if (pos + 1 < tokens.size() && tokens[pos] == "f" && tokens[pos + 1] == "=") {
      pos += 2;
      TsRule rule;
      rule.antecedent = antecedent;
      bool expect_plus = false;
      while (pos < tokens.size()) {
        if (expect_plus) {
          if (tokens[pos] != "+") raise(Errc::bad_rule_text, where + ": expected '+'");
          ++pos;
          if (pos >= tokens.size()) raise(Errc::bad_rule_text, where + ": dangling '+'");
        }
        const std::string& term = tokens[pos];
        const auto star = term.find('*');
        const std::string num = star == std::string::npos ? term : term.substr(0, star);
        char* end = nullptr;
        const double q = std::strtod(num.c_str(), &end);
        if (end == num.c_str() || *end != '\0')
          raise(Errc::bad_rule_text, where + ": bad coefficient '" + num + "'");
        if (star != std::string::npos) {
          const std::string var = term.substr(star + 1);
          const std::size_t j = rule.coefficients.size() - 1;
          if (j >= antecedent.size() || var != antecedent[j].first)
            raise(Errc::bad_rule_text, where + ": coefficient order must follow the antecedent");
        }
        rule.coefficients.push_back(q);
        ++pos;
        expect_plus = true;
      }
      if (rule.coefficients.size() != antecedent.size() + 1)
        raise(Errc::bad_rule_text, where + ": need one coefficient per antecedent variable + 1");
      parsed.ts.push_back(std::move(rule));
    } else {
      if (pos + 2 >= tokens.size() || tokens[pos + 1] != "IS" || pos + 3 != tokens.size())
        raise(Errc::bad_rule_text, where + ": expected '<var> IS <label>' consequent");
      MamdaniRule rule;
      rule.antecedent = antecedent;
      rule.consequent = {tokens[pos], tokens[pos + 2]};
      parsed.mamdani.push_back(std::move(rule));
    }
  }
  return parsed;
}

}  // namespace loadcast
