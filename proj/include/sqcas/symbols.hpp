#pragma once

#include <map>
#include <string>
#include <string_view>

#include "sqcas/galg.hpp"

namespace sqcas {

/// Named atoms shared by the superspace, reduction and soliton modules.
namespace symbols {

inline galg::Atom theta() { return galg::Atom::odd("θ", true); }
inline galg::Atom theta_star() { return theta().conjugate(); }
inline galg::Atom epsilon() { return galg::Atom::odd("ε", true); }
inline galg::Atom epsilon_star() { return epsilon().conjugate(); }

inline galg::Atom x() { return galg::Atom::even("x"); }
inline galg::Atom psi() { return galg::Atom::odd("ψ"); }
inline galg::Atom psi_star() { return psi().conjugate(); }
inline galg::Atom aux() { return galg::Atom::even("D"); }
inline galg::Atom momentum() { return galg::Atom::even("p"); }

}  // namespace symbols

namespace galg {

/// Parity and time dependence of atoms recovered from their names when
/// parsing text. Undeclared names are even, real and time dependent.
class SymbolTable {
 public:
  struct Info {
    Parity parity = Parity::even;
    bool constant = false;
    bool real = true;
  };

  /// θ, ψ, ε (odd), x, D, p (even), and the supersoliton constants.
  static SymbolTable standard();

  void declare(const std::string& name, Info info) { table_[name] = info; }
  void declare(const Atom& a) { table_[a.name] = Info{a.parity, a.constant, a.real}; }
  Info lookup(const std::string& name) const;

 private:
  std::map<std::string, Info> table_;
};

/// Reads the format produced by to_string(GradedExpr). Factors are
/// multiplied in the order written, so odd atoms pick up reordering signs.
/// Throws ParseError.
GradedExpr parse(std::string_view text, const SymbolTable& table = SymbolTable::standard());

}  // namespace galg
}  // namespace sqcas
