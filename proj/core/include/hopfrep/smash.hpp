#pragma once

// The deformed algebra itself: normal-form elements are sums of
// (irreducible word in a0,a1,a2) * (group element), multiplication rewrites
// words through a completed rewriting system seeded by the defining
// relations, with group letters pushed to the right. Induced modules and the
// regular module are built on the normal-form basis.

#include <cstdint>
#include <map>

#include "hopfrep/repmod.hpp"

namespace hopfrep {

using Word = std::vector<uint8_t>;  // letters 0, 1, 2

std::string word_str(const Word& w);

// deg-lex with a0 < a1 < a2
bool word_less(const Word& a, const Word& b);

// g . (a_{i1} ... a_{ik}) = sign * a_{j1} ... a_{jk}: t negates and flips
// indices, s rotates them; only the parity of the t-power contributes signs.
struct WordImage {
  Word w;
  int sign = 1;
};
WordImage act_word(GroupElement g, const Word& w);

class SmashElement {
 public:
  using Key = std::pair<Word, GroupElement>;

  SmashElement() = default;
  explicit SmashElement(ParamSet params) : params_(std::move(params)) {}
  static SmashElement term(const ParamSet& params, Word w, GroupElement g, Cyc c);

  const ParamSet& params() const { return params_; }
  const std::map<Key, Cyc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Word& w, GroupElement g, const Cyc& c);
  SmashElement operator+(const SmashElement& o) const;
  SmashElement operator-(const SmashElement& o) const;
  SmashElement operator*(const Cyc& c) const;
  bool operator==(const SmashElement& o) const { return terms_ == o.terms_; }

  std::string str() const;

 private:
  ParamSet params_;
  std::map<Key, Cyc> terms_;
};

class Algebra {
 public:
  // Seeds the square and cyclic relations as rewrite rules, eliminates the
  // two largest quadratic leading words, then resolves every overlap
  // ambiguity until the system is confluent. Asserts exactly 12 irreducible
  // words with degree profile 1,3,4,3,1.
  static Algebra build(const ParamSet& params);

  const ParamSet& params() const { return params_; }
  const std::map<Word, SmashElement>& rules() const { return rules_; }
  const std::vector<Word>& basis_words() const { return words_; }
  long dim() const { return static_cast<long>(words_.size()) * 6 * params_.ell; }

  SmashElement reduce(const SmashElement& x, bool rightmost = false) const;
  SmashElement mul(const SmashElement& x, const SmashElement& y) const;

  SmashElement one() const;
  SmashElement gen_a(int i) const;          // a_i
  SmashElement gen_g(GroupElement g) const; // group element
  SmashElement word_elem(const Word& w) const;

  // A (+) over kG applied to a group representation; basis w (x) v with w a
  // normal-form word. dim = 12 * dim S.
  ModuleRep induce(const GRep& rep, const std::string& label) const;
  ModuleRep induce(IrrepLabel label) const;

  // The left regular module on the normal-form basis, dim 72 l.
  ModuleRep regular_module() const;

 private:
  ParamSet params_;
  std::map<Word, SmashElement> rules_;
  std::vector<Word> words_;
  std::vector<GroupElement> group_;
  std::map<std::pair<int, int>, int> gindex_;

  explicit Algebra(ParamSet p) : params_(std::move(p)) {}
  void complete();
  void collect_basis_words();
  SmashElement expand_term(const Word& w, GroupElement g, const Cyc& c, bool rightmost) const;
  const Word* find_redex(const Word& w, size_t* pos, bool rightmost) const;
  ModuleRep module_on_basis(int dim, const std::function<void(const SmashElement&, Mat&)>& fill,
                            const std::string& label) const;
};

}  // namespace hopfrep
