#include "sqcas/galg.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sqcas::galg {

// ---------------------------------------------------------------------------
// Atom / Signature

Atom Atom::even(std::string name, bool constant) {
  Atom a;
  a.name = std::move(name);
  a.constant = constant;
  return a;
}

Atom Atom::odd(std::string name, bool constant) {
  Atom a;
  a.name = std::move(name);
  a.parity = Parity::odd;
  a.constant = constant;
  a.real = false;
  return a;
}

Atom Atom::dotted(int n) const {
  Atom a = *this;
  a.dot_order += n;
  return a;
}

Atom Atom::conjugate() const {
  Atom a = *this;
  if (!real) a.conjugated = !a.conjugated;
  return a;
}

Atom Atom::base() const {
  Atom a = *this;
  a.dot_order = 0;
  return a;
}

bool Signature::contains(const Atom& a) const {
  if (a.is_odd()) return std::binary_search(odd.begin(), odd.end(), a);
  return power_of(a) != 0;
}

int Signature::power_of(const Atom& a) const {
  auto it = std::lower_bound(even.begin(), even.end(), a,
                             [](const auto& entry, const Atom& key) { return entry.first < key; });
  return (it != even.end() && it->first == a) ? it->second : 0;
}

namespace {

// Sorted merge of two power lists; zero powers are dropped.
EvenPart merge_even(const EvenPart& a, const EvenPart& b) {
  EvenPart out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      int p = i->second + j->second;
      if (p != 0) out.emplace_back(i->first, p);
      ++i;
      ++j;
    }
  }
  return out;
}

// Merges two strictly sorted odd sequences a·b. Returns 0 when an atom repeats,
// otherwise the sign of the sorting permutation.
int merge_odd(const OddPart& a, const OddPart& b, OddPart& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  std::size_t inversions = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      inversions += a.size() - i;
      out.push_back(b[j++]);
    } else {
      return 0;
    }
  }
  return inversions % 2 ? -1 : 1;
}

// Sorts an arbitrary odd sequence in place. Returns 0 on a repeated atom,
// otherwise the permutation sign.
int sort_odd(OddPart& odd) {
  std::size_t swaps = 0;
  for (std::size_t i = 1; i < odd.size(); ++i) {
    for (std::size_t j = i; j > 0 && odd[j] < odd[j - 1]; --j) {
      std::swap(odd[j], odd[j - 1]);
      ++swaps;
    }
  }
  for (std::size_t i = 1; i < odd.size(); ++i)
    if (odd[i] == odd[i - 1]) return 0;
  return swaps % 2 ? -1 : 1;
}

void add_even_power(EvenPart& even, const Atom& a, int p) {
  if (p == 0) return;
  auto it = std::lower_bound(even.begin(), even.end(), a,
                             [](const auto& entry, const Atom& key) { return entry.first < key; });
  if (it != even.end() && it->first == a) {
    it->second += p;
    if (it->second == 0) even.erase(it);
  } else {
    even.insert(it, {a, p});
  }
}

GradedExpr single(Signature s, const Coefficient& c) {
  GradedExpr out;
  out.add_term(s, c);
  return out;
}

Coefficient sign_coefficient(int sign) { return Coefficient(static_cast<long>(sign)); }

}  // namespace

// ---------------------------------------------------------------------------
// GradedExpr

GradedExpr::GradedExpr(Coefficient c) {
  if (!c.is_zero()) terms_.emplace(Signature{}, std::move(c));
}

GradedExpr::GradedExpr(const Atom& a) {
  Signature s;
  if (a.is_odd())
    s.odd.push_back(a);
  else
    s.even.emplace_back(a, 1);
  terms_.emplace(std::move(s), Coefficient(1));
}

GradedExpr GradedExpr::from_monomial(Monomial m) {
  FactorList f;
  f.emplace_back(m.coefficient);
  for (const auto& [a, p] : m.signature.even) f.emplace_back(std::pair{a, p});
  for (const auto& a : m.signature.odd) f.emplace_back(a);
  return normalize(f);
}

Coefficient GradedExpr::coefficient(const Signature& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Coefficient() : it->second;
}

bool GradedExpr::is_homogeneous(Parity p) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [p](const auto& t) { return t.first.parity() == p; });
}

bool GradedExpr::contains(const Atom& a) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&a](const auto& t) { return t.first.contains(a); });
}

GradedExpr GradedExpr::filter(const std::function<bool(const Signature&)>& keep) const {
  GradedExpr out;
  for (const auto& [s, c] : terms_)
    if (keep(s)) out.terms_.emplace(s, c);
  return out;
}

void GradedExpr::add_term(const Signature& s, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GradedExpr GradedExpr::operator-() const {
  GradedExpr out = *this;
  for (auto& [s, c] : out.terms_) c = -c;
  return out;
}

GradedExpr& GradedExpr::operator+=(const GradedExpr& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

GradedExpr& GradedExpr::operator-=(const GradedExpr& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, -c);
  return *this;
}

GradedExpr& GradedExpr::operator*=(const Coefficient& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, v] : terms_) v *= c;
  return *this;
}

GradedExpr operator*(const GradedExpr& a, const GradedExpr& b) { return mul(a, b); }

// ---------------------------------------------------------------------------
// Products

GradedExpr normalize(const FactorList& product) {
  Coefficient c(1);
  Signature s;
  for (const auto& f : product) {
    if (const auto* coef = std::get_if<Coefficient>(&f)) {
      c *= *coef;
    } else if (const auto* atom = std::get_if<Atom>(&f)) {
      if (atom->is_odd())
        s.odd.push_back(*atom);
      else
        add_even_power(s.even, *atom, 1);
    } else {
      const auto& [a, p] = std::get<std::pair<Atom, int>>(f);
      if (p == 0) continue;
      if (a.is_odd()) {
        if (p < 0) throw std::invalid_argument("negative power of odd atom " + to_string(a));
        if (p > 1) return {};
        s.odd.push_back(a);
      } else {
        add_even_power(s.even, a, p);
      }
    }
  }
  int sign = sort_odd(s.odd);
  if (sign == 0 || c.is_zero()) return {};
  return single(std::move(s), c * sign_coefficient(sign));
}

GradedExpr normalize(std::span<const FactorList> raw) {
  GradedExpr out;
  for (const auto& product : raw) out += normalize(product);
  return out;
}

GradedExpr mul(const GradedExpr& a, const GradedExpr& b) {
  GradedExpr out;
  OddPart odd;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      int sign = merge_odd(sa.odd, sb.odd, odd);
      if (sign == 0) continue;
      Signature s{merge_even(sa.even, sb.even), odd};
      out.add_term(s, sign > 0 ? ca * cb : -(ca * cb));
    }
  }
  return out;
}

namespace {

GradedExpr invert_monomial(const GradedExpr& e) {
  if (e.size() != 1 || !e.terms().begin()->first.odd.empty())
    throw std::invalid_argument("only a single even monomial can be inverted: " + to_string(e));
  const auto& [s, c] = *e.terms().begin();
  Signature inv;
  for (const auto& [a, p] : s.even) inv.even.emplace_back(a, -p);
  return single(std::move(inv), c.inverse());
}

}  // namespace

GradedExpr pow(const GradedExpr& base, int exponent) {
  if (exponent < 0) return pow(invert_monomial(base), -exponent);
  GradedExpr result(1);
  GradedExpr b = base;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, b);
    exponent >>= 1;
    if (exponent > 0) b = mul(b, b);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Derivations

GradedExpr left_derivative(const GradedExpr& e, const Atom& v) {
  if (!v.is_odd()) throw std::invalid_argument("left_derivative needs an odd atom, got " + to_string(v));
  GradedExpr out;
  for (const auto& [s, c] : e.terms()) {
    auto it = std::lower_bound(s.odd.begin(), s.odd.end(), v);
    if (it == s.odd.end() || !(*it == v)) continue;
    auto k = std::distance(s.odd.begin(), it);
    Signature rest = s;
    rest.odd.erase(rest.odd.begin() + k);
    out.add_term(rest, k % 2 ? -c : c);
  }
  return out;
}

GradedExpr apply_even_derivation(const GradedExpr& e,
                                 const std::function<GradedExpr(const Atom&)>& image) {
  GradedExpr out;
  for (const auto& [s, c] : e.terms()) {
    for (const auto& [a, p] : s.even) {
      GradedExpr da = image(a);
      if (da.is_zero()) continue;
      Signature rest = s;
      add_even_power(rest.even, a, -1);
      out += mul(single(rest, c * Coefficient(static_cast<long>(p))), da);
    }
    for (std::size_t k = 0; k < s.odd.size(); ++k) {
      GradedExpr da = image(s.odd[k]);
      if (da.is_zero()) continue;
      Signature left{s.even, OddPart(s.odd.begin(), s.odd.begin() + static_cast<long>(k))};
      Signature right{{}, OddPart(s.odd.begin() + static_cast<long>(k) + 1, s.odd.end())};
      out += mul(mul(single(left, c), da), single(right, 1));
    }
  }
  return out;
}

GradedExpr partial_derivative(const GradedExpr& e, const Atom& v) {
  if (v.is_odd()) throw std::invalid_argument("partial_derivative needs an even atom, got " + to_string(v));
  return apply_even_derivation(e, [&v](const Atom& a) { return a == v ? GradedExpr(1) : GradedExpr(); });
}

GradedExpr time_derivative(const GradedExpr& e) {
  return apply_even_derivation(
      e, [](const Atom& a) { return a.constant ? GradedExpr() : GradedExpr(a.dotted()); });
}

GradedExpr time_derivative(const GradedExpr& e, int times) {
  GradedExpr out = e;
  for (int i = 0; i < times; ++i) out = time_derivative(out);
  return out;
}

// ---------------------------------------------------------------------------
// Berezin integration

GradedExpr berezin(const GradedExpr& e, std::span<const Atom> order) {
  std::set<Atom> seen;
  for (const auto& v : order) {
    if (!v.is_odd()) throw std::invalid_argument("Berezin integration over even atom " + to_string(v));
    if (!seen.insert(v).second) throw std::invalid_argument("repeated Berezin variable " + to_string(v));
  }
  GradedExpr out = e;
  for (const auto& v : order) out = left_derivative(out, v);
  return out;
}

GradedExpr berezin_measure(const GradedExpr& e, const Atom& theta, const Atom& theta_star) {
  if constexpr (kBerezinOrientation > 0) {
    const Atom order[] = {theta, theta_star};
    return berezin(e, order);
  } else {
    const Atom order[] = {theta_star, theta};
    return berezin(e, order);
  }
}

// ---------------------------------------------------------------------------
// Substitution / conjugation

GradedExpr substitute(const GradedExpr& e, const Atom& target, const GradedExpr& replacement) {
  if (!replacement.is_homogeneous(target.parity))
    throw std::invalid_argument("parity mismatch substituting for " + to_string(target) + ": " +
                                to_string(replacement));
  GradedExpr out;
  for (const auto& [s, c] : e.terms()) {
    if (!s.contains(target)) {
      out.add_term(s, c);
      continue;
    }
    GradedExpr term(c);
    for (const auto& [a, p] : s.even) {
      if (a == target)
        term = mul(term, pow(replacement, p));
      else
        term = mul(term, single(Signature{{{a, p}}, {}}, 1));
    }
    for (const auto& a : s.odd) term = mul(term, a == target ? replacement : GradedExpr(a));
    out += term;
  }
  return out;
}

GradedExpr conjugate(const GradedExpr& e) {
  GradedExpr out;
  for (const auto& [s, c] : e.terms()) {
    FactorList f;
    f.emplace_back(c.conj());
    for (const auto& [a, p] : s.even) f.emplace_back(std::pair{a.conjugate(), p});
    for (auto it = s.odd.rbegin(); it != s.odd.rend(); ++it) f.emplace_back(it->conjugate());
    out += normalize(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text output

std::string to_string(const Atom& a) {
  std::string out = a.name;
  if (a.conjugated) out += '~';
  out.append(static_cast<std::size_t>(a.dot_order), '\'');
  return out;
}

namespace {

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

std::string magnitude(const mpq_class& q) {
  mpq_class m = abs(q);
  return is_integer(m) ? m.get_str() : "(" + m.get_str() + ")";
}

// Leading factor of a term; `negative` receives the sign to print in front.
std::string coefficient_factor(const Coefficient& c, bool& negative, bool has_atoms) {
  negative = false;
  if (c.is_real()) {
    negative = sgn(c.real()) < 0;
    if (abs(c.real()) == 1 && has_atoms) return "";
    return magnitude(c.real());
  }
  if (sgn(c.real()) == 0) {
    negative = sgn(c.imag()) < 0;
    if (abs(c.imag()) == 1) return "i";
    return magnitude(c.imag()) + "*i";
  }
  std::string im = abs(c.imag()) == 1 ? "i" : mpq_class(abs(c.imag())).get_str() + "*i";
  return "(" + c.real().get_str() + (sgn(c.imag()) < 0 ? "-" : "+") + im + ")";
}

std::string atom_power(const Atom& a, int p) {
  std::string out = to_string(a);
  if (p == 1) return out;
  if (p < 0) return out + "^(" + std::to_string(p) + ")";
  return out + "^" + std::to_string(p);
}

}  // namespace

std::string to_string(const Coefficient& c) {
  bool negative = false;
  std::string body = coefficient_factor(c, negative, false);
  return negative ? "-" + body : body;
}

std::string to_string(const GradedExpr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : e.terms()) {
    bool has_atoms = !s.even.empty() || !s.odd.empty();
    bool negative = false;
    std::string coef = coefficient_factor(c, negative, has_atoms);
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    std::vector<std::string> parts;
    if (!coef.empty()) parts.push_back(coef);
    for (const auto& [a, p] : s.even) parts.push_back(atom_power(a, p));
    for (const auto& a : s.odd) parts.push_back(to_string(a));
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LaTeX output

namespace {

std::string latex_name(const std::string& name) {
  static const std::map<std::string, std::string> greek = {
      {"θ", "\\theta"}, {"ψ", "\\psi"},     {"ε", "\\varepsilon"}, {"α", "\\alpha"},
      {"β", "\\beta"},  {"σ", "\\sigma"},   {"φ", "\\varphi"},     {"χ", "\\chi"},
      {"ω", "\\omega"}, {"√α₀", "\\sqrt{\\alpha_0}"}};
  auto it = greek.find(name);
  if (it != greek.end()) return it->second;
  std::string out;
  for (char ch : name) {
    if (ch == '_')
      out += "\\_";
    else
      out += ch;
  }
  return name.find('_') != std::string::npos ? "\\mathrm{" + out + "}" : out;
}

std::string latex_atom(const Atom& a, int p) {
  std::string body = latex_name(a.name);
  if (a.dot_order == 1)
    body = "\\dot{" + body + "}";
  else if (a.dot_order == 2)
    body = "\\ddot{" + body + "}";
  else if (a.dot_order > 2)
    body = body + "^{(" + std::to_string(a.dot_order) + ")}";
  if (a.conjugated) body += "^{*}";
  if (p != 1) {
    if (a.conjugated || a.dot_order > 2) body = "(" + body + ")";
    body += "^{" + std::to_string(p) + "}";
  }
  return body;
}

std::string latex_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

}  // namespace

std::string to_latex(const GradedExpr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : e.terms()) {
    bool has_atoms = !s.even.empty() || !s.odd.empty();
    bool negative = false;
    std::string coef;
    if (c.is_real() || sgn(c.real()) == 0) {
      const mpq_class& v = c.is_real() ? c.real() : c.imag();
      negative = sgn(v) < 0;
      mpq_class m = abs(v);
      bool unit = m == 1;
      if (c.is_real())
        coef = unit && has_atoms ? "" : latex_rational(m);
      else
        coef = unit ? "i" : latex_rational(m) + " i";
    } else {
      coef = "\\left(" + latex_rational(c.real()) + (sgn(c.imag()) < 0 ? " - " : " + ") +
             latex_rational(abs(c.imag())) + " i\\right)";
    }
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    std::vector<std::string> parts;
    if (!coef.empty()) parts.push_back(coef);
    for (const auto& [a, p] : s.even) parts.push_back(latex_atom(a, p));
    for (const auto& a : s.odd) parts.push_back(latex_atom(a, 1));
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " " : "") << parts[i];
  }
  return os.str();
}

}  // namespace sqcas::galg
