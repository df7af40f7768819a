#pragma once

// Free graded-commutative algebra over exact complex rationals.
//
// Monomials are stored in a unique normal form: even atoms as a sorted
// power list, odd atoms as a strictly increasing sequence. Any product is
// reduced to that form by sorting the odd factors and multiplying the
// coefficient by the permutation sign; a repeated odd factor kills the term.

#include <compare>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sqcas/coefficient.hpp"

namespace sqcas::galg {

enum class Parity : unsigned char { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<unsigned char>(a) ^ static_cast<unsigned char>(b));
}

/// A generator of the algebra.
///
/// Member order is the canonical order: name, then conjugation, then the
/// number of time derivatives. `constant` atoms (superspace coordinates,
/// SUSY parameters, couplings) are annihilated by time differentiation;
/// `real` atoms are their own conjugate partner.
struct Atom {
  std::string name;
  bool conjugated = false;
  int dot_order = 0;
  Parity parity = Parity::even;
  bool constant = false;
  bool real = true;

  static Atom even(std::string name, bool constant = false);
  static Atom odd(std::string name, bool constant = false);

  bool is_odd() const { return parity == Parity::odd; }
  Atom dotted(int n = 1) const;
  /// Conjugate partner: real atoms map to themselves.
  Atom conjugate() const;
  /// Same atom with dot_order reset to zero.
  Atom base() const;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

using EvenPart = std::vector<std::pair<Atom, int>>;
using OddPart = std::vector<Atom>;

/// Coefficient-free part of a normalized monomial.
struct Signature {
  EvenPart even;
  OddPart odd;

  Parity parity() const { return odd.size() % 2 ? Parity::odd : Parity::even; }
  bool contains(const Atom& a) const;
  int power_of(const Atom& a) const;

  friend auto operator<=>(const Signature&, const Signature&) = default;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Monomial {
  Coefficient coefficient;
  Signature signature;
};

/// Canonical sum of monomials. No stored coefficient is zero, so equality of
/// the term maps is equality of the algebra elements.
class GradedExpr {
 public:
  using TermMap = std::map<Signature, Coefficient>;

  GradedExpr() = default;
  GradedExpr(Coefficient c);  // NOLINT(google-explicit-constructor)
  GradedExpr(long c) : GradedExpr(Coefficient(c)) {}  // NOLINT(google-explicit-constructor)
  GradedExpr(const Atom& a);  // NOLINT(google-explicit-constructor)

  static GradedExpr from_monomial(Monomial m);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of the given signature (zero if absent).
  Coefficient coefficient(const Signature& s) const;
  /// True when every monomial has parity `p` (vacuously true for zero).
  bool is_homogeneous(Parity p) const;
  bool contains(const Atom& a) const;
  /// Terms whose signature satisfies `keep`.
  GradedExpr filter(const std::function<bool(const Signature&)>& keep) const;

  /// Adds `c * s` to this expression; `s` must already be normalized.
  void add_term(const Signature& s, const Coefficient& c);

  GradedExpr operator-() const;
  GradedExpr& operator+=(const GradedExpr& o);
  GradedExpr& operator-=(const GradedExpr& o);
  GradedExpr& operator*=(const Coefficient& c);

  friend GradedExpr operator+(GradedExpr a, const GradedExpr& b) { return a += b; }
  friend GradedExpr operator-(GradedExpr a, const GradedExpr& b) { return a -= b; }
  friend GradedExpr operator*(const GradedExpr& a, const GradedExpr& b);
  friend GradedExpr operator*(GradedExpr a, const Coefficient& c) { return a *= c; }
  friend GradedExpr operator*(const Coefficient& c, GradedExpr a) { return a *= c; }
  friend bool operator==(const GradedExpr& a, const GradedExpr& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

/// Raw factor: an atom raised to a power, or a scalar.
using Factor = std::variant<Atom, Coefficient, std::pair<Atom, int>>;
using FactorList = std::vector<Factor>;

/// Sum of the ordered products in `raw`, brought to normal form.
GradedExpr normalize(std::span<const FactorList> raw);
GradedExpr normalize(const FactorList& product);

GradedExpr mul(const GradedExpr& a, const GradedExpr& b);
GradedExpr pow(const GradedExpr& base, int exponent);

/// Graded left derivative with respect to an odd atom. Throws
/// std::invalid_argument for even `v`.
GradedExpr left_derivative(const GradedExpr& e, const Atom& v);

/// Ordinary partial derivative with respect to an even atom (integer powers,
/// including negative ones).
GradedExpr partial_derivative(const GradedExpr& e, const Atom& v);

/// Applies the parity-preserving derivation defined on atoms by `image`.
/// `image(a)` must have the parity of `a`; returning zero means the atom is
/// annihilated.
GradedExpr apply_even_derivation(const GradedExpr& e,
                                 const std::function<GradedExpr(const Atom&)>& image);

/// d/dt: raises the dot order of every non-constant atom.
GradedExpr time_derivative(const GradedExpr& e);
GradedExpr time_derivative(const GradedExpr& e, int times);

/// Iterated Berezin integral: left derivatives applied in the listed order,
/// so `{θ, θ*}` means ∫dθ* ∫dθ with dθ innermost. Throws on even or repeated
/// atoms.
GradedExpr berezin(const GradedExpr& e, std::span<const Atom> order);

/// Value of ∫dθ* dθ (θ θ*) in the superspace measure.
inline constexpr int kBerezinOrientation = 1;

/// ∫dθ* dθ e for the coordinate pair, with the orientation above.
GradedExpr berezin_measure(const GradedExpr& e, const Atom& theta, const Atom& theta_star);

/// Replaces every occurrence of `target` by `replacement`. Throws
/// std::invalid_argument when the parities differ.
GradedExpr substitute(const GradedExpr& e, const Atom& target, const GradedExpr& replacement);

/// Antilinear antiautomorphism: (AB)* = B* A*, atoms to their partners.
GradedExpr conjugate(const GradedExpr& e);

/// Text serialization, e.g. "(3/2)*x^2*θ*θ~ - i*ψ'".
std::string to_string(const GradedExpr& e);
std::string to_string(const Atom& a);
std::string to_string(const Coefficient& c);

/// LaTeX fragment for documentation output.
std::string to_latex(const GradedExpr& e);

}  // namespace sqcas::galg
