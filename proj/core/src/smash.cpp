#include "hopfrep/smash.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace hopfrep {

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (uint8_t l : w) os << "a" << static_cast<int>(l);
  return os.str();
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

WordImage act_word(GroupElement g, const Word& w) {
  WordImage out;
  out.w.reserve(w.size());
  bool odd = g.b % 2 != 0;
  for (uint8_t l : w) {
    int i = l;
    if (odd) {
      i = (3 - i) % 3;
      out.sign = -out.sign;
    }
    out.w.push_back(static_cast<uint8_t>((i + g.a) % 3));
  }
  return out;
}

SmashElement SmashElement::term(const ParamSet& params, Word w, GroupElement g, Cyc c) {
  SmashElement e(params);
  e.add_term(w, g, c);
  return e;
}

void SmashElement::add_term(const Word& w, GroupElement g, const Cyc& c) {
  if (c.is_zero()) return;
  Key k{w, g};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SmashElement SmashElement::operator+(const SmashElement& o) const {
  SmashElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
  return r;
}

SmashElement SmashElement::operator-(const SmashElement& o) const {
  SmashElement r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
  return r;
}

SmashElement SmashElement::operator*(const Cyc& c) const {
  SmashElement r(params_);
  if (c.is_zero()) return r;
  for (const auto& [k, w] : terms_) r.terms_.emplace(k, w * c);
  return r;
}

std::string SmashElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << word_str(k.first);
    if (k.second.a != 0 || k.second.b != 0) {
      if (k.second.a) os << "*s" << (k.second.a > 1 ? "^2" : "");
      if (k.second.b) {
        os << "*t";
        if (k.second.b > 1) os << "^" << k.second.b;
      }
    }
  }
  return os.str();
}

// ---- reduction -------------------------------------------------------------

const Word* Algebra::find_redex(const Word& w, size_t* pos, bool rightmost) const {
  auto match_at = [&](size_t p) -> const Word* {
    for (const auto& [lhs, rhs] : rules_) {
      if (lhs.size() > w.size() - p) continue;
      if (std::equal(lhs.begin(), lhs.end(), w.begin() + p)) return &lhs;
    }
    return nullptr;
  };
  if (!rightmost) {
    for (size_t p = 0; p < w.size(); ++p)
      if (const Word* l = match_at(p)) {
        *pos = p;
        return l;
      }
  } else {
    for (size_t p = w.size(); p-- > 0;)
      if (const Word* l = match_at(p)) {
        *pos = p;
        return l;
      }
  }
  return nullptr;
}

SmashElement Algebra::expand_term(const Word& w, GroupElement g, const Cyc& c,
                                  bool rightmost) const {
  SmashElement out(params_);
  std::deque<std::tuple<Word, GroupElement, Cyc>> work;
  work.push_back({w, g, c});
  while (!work.empty()) {
    auto [cw, cg, cc] = std::move(work.front());
    work.pop_front();
    size_t pos = 0;
    const Word* lhs = find_redex(cw, &pos, rightmost);
    if (!lhs) {
      out.add_term(cw, cg, cc);
      continue;
    }
    const SmashElement& rhs = rules_.at(*lhs);
    Word prefix(cw.begin(), cw.begin() + pos);
    Word suffix(cw.begin() + pos + lhs->size(), cw.end());
    for (const auto& [key, rc] : rhs.terms()) {
      const Word& rw = key.first;
      GroupElement rg = key.second;
      WordImage moved = act_word(rg, suffix);
      Word nw = prefix;
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), moved.w.begin(), moved.w.end());
      Cyc nc = cc * rc;
      if (moved.sign < 0) nc = -nc;
      work.push_back({std::move(nw), g_mul(params_.ell, rg, cg), std::move(nc)});
    }
  }
  return out;
}

SmashElement Algebra::reduce(const SmashElement& x, bool rightmost) const {
  SmashElement out(params_);
  for (const auto& [k, c] : x.terms()) out = out + expand_term(k.first, k.second, c, rightmost);
  return out;
}

SmashElement Algebra::mul(const SmashElement& x, const SmashElement& y) const {
  SmashElement out(params_);
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      WordImage moved = act_word(kx.second, ky.first);
      Word w = kx.first;
      w.insert(w.end(), moved.w.begin(), moved.w.end());
      Cyc c = cx * cy;
      if (moved.sign < 0) c = -c;
      GroupElement g = g_mul(params_.ell, kx.second, ky.second);
      out = out + expand_term(w, g, c, false);
    }
  return out;
}

SmashElement Algebra::one() const {
  return SmashElement::term(params_, {}, {0, 0}, params_.one());
}
SmashElement Algebra::gen_a(int i) const {
  return SmashElement::term(params_, {static_cast<uint8_t>(i % 3)}, {0, 0}, params_.one());
}
SmashElement Algebra::gen_g(GroupElement g) const {
  return SmashElement::term(params_, {}, g, params_.one());
}
SmashElement Algebra::word_elem(const Word& w) const {
  return SmashElement::term(params_, w, {0, 0}, params_.one());
}

// ---- completion ------------------------------------------------------------

namespace {

// leading (deg-lex greatest) word of a nonzero element
Word leading_word(const SmashElement& e) {
  Word best;
  bool first = true;
  for (const auto& [k, c] : e.terms()) {
    if (first || word_less(best, k.first)) {
      best = k.first;
      first = false;
    }
  }
  return best;
}

}  // namespace

Algebra Algebra::build(const ParamSet& params) {
  Algebra alg(params);
  const Ctx& ctx = params.ctx;
  const ParamSet& p = params;
  Cyc lam = p.lambda(), mu = p.mu, one = p.one();

  // a_i a_i -> mu (1 - t^2)
  for (int i = 0; i < 3; ++i) {
    SmashElement rhs(p);
    rhs.add_term({}, {0, 0}, mu);
    rhs.add_term({}, {0, 2 % (2 * p.ell)}, -mu);
    alg.rules_[{static_cast<uint8_t>(i), static_cast<uint8_t>(i)}] = rhs;
  }
  // a2 a0 -> lambda (1 - s t^2) - a0 a1 - a1 a2
  {
    SmashElement rhs(p);
    rhs.add_term({}, {0, 0}, lam);
    rhs.add_term({}, {1, 2 % (2 * p.ell)}, -lam);
    rhs.add_term({0, 1}, {0, 0}, -one);
    rhs.add_term({1, 2}, {0, 0}, -one);
    alg.rules_[{2, 0}] = rhs;
  }
  // a2 a1 -> lambda (1 - s^2 t^2) - a1 a0 - a0 a2
  {
    SmashElement rhs(p);
    rhs.add_term({}, {0, 0}, lam);
    rhs.add_term({}, {2, 2 % (2 * p.ell)}, -lam);
    rhs.add_term({1, 0}, {0, 0}, -one);
    rhs.add_term({0, 2}, {0, 0}, -one);
    alg.rules_[{2, 1}] = rhs;
  }

  alg.complete();
  alg.collect_basis_words();
  return alg;
}

void Algebra::complete() {
  const size_t kMaxRules = 64;
  const size_t kMaxDegree = 10;
  bool changed = true;
  while (changed) {
    changed = false;
    // snapshot, since we mutate on additions
    std::vector<std::pair<Word, SmashElement>> snapshot(rules_.begin(), rules_.end());
    for (const auto& [l1, r1] : snapshot) {
      for (const auto& [l2, r2] : snapshot) {
        // overlap: a proper suffix of l1 equals a prefix of l2
        for (size_t o = 1; o <= std::min(l1.size(), l2.size()); ++o) {
          if (o == l1.size() && o == l2.size()) continue;  // identical rule
          if (!std::equal(l1.end() - o, l1.end(), l2.begin())) continue;
          // w = l1 + tail(l2), reduced two ways
          Word tail(l2.begin() + o, l2.end());
          Word head(l1.begin(), l1.end() - o);
          SmashElement via1 = mul(r1, word_elem(tail));
          SmashElement via2 = mul(word_elem(head), r2);
          SmashElement diff = reduce(via1 - via2, false);
          if (diff.is_zero()) continue;
          // extract a new rule from the unresolved ambiguity
          Word lead = leading_word(diff);
          if (lead.size() > kMaxDegree)
            throw CompletionFailure("runaway leading word during completion");
          std::vector<std::pair<GroupElement, Cyc>> lead_coeffs;
          for (const auto& [k, c] : diff.terms())
            if (k.first == lead) lead_coeffs.push_back({k.second, c});
          if (lead_coeffs.size() != 1)
            throw CompletionFailure("leading word carries a non-invertible coefficient");
          auto [g0, c0] = lead_coeffs[0];
          GroupElement g0inv = g_inv(params_.ell, g0);
          Cyc scale = -(c0.inv());
          SmashElement rhs(params_);
          for (const auto& [k, c] : diff.terms()) {
            if (k.first == lead) continue;
            if (!word_less(k.first, lead))
              throw CompletionFailure("ambiguity residue is not triangular");
            rhs.add_term(k.first, g_mul(params_.ell, k.second, g0inv), c * scale);
          }
          // normalize the whole relation by g0^{-1} on the right
          rules_[lead] = rhs;
          if (rules_.size() > kMaxRules) throw CompletionFailure("rule set did not stabilize");
          changed = true;
        }
        if (changed) break;
      }
      if (changed) break;
    }
  }
}

void Algebra::collect_basis_words() {
  std::vector<Word> level = {Word{}};
  std::vector<int> profile;
  words_.clear();
  while (!level.empty()) {
    profile.push_back(static_cast<int>(level.size()));
    for (const Word& w : level) words_.push_back(w);
    std::vector<Word> next;
    for (const Word& w : level)
      for (uint8_t l = 0; l < 3; ++l) {
        Word e = w;
        e.push_back(l);
        size_t pos = 0;
        if (!find_redex(e, &pos, false)) next.push_back(std::move(e));
      }
    level = std::move(next);
    if (profile.size() > 8) throw CompletionFailure("irreducible words do not terminate");
  }
  std::sort(words_.begin(), words_.end(), word_less);
  std::vector<int> expected = {1, 3, 4, 3, 1};
  if (profile != expected || words_.size() != 12)
    throw CompletionFailure("normal-form basis is not the expected twelve words");

  group_ = group_elements(params_.ell);
  for (size_t i = 0; i < group_.size(); ++i) gindex_[{group_[i].a, group_[i].b}] = static_cast<int>(i);
}

// ---- modules on the normal-form basis --------------------------------------

ModuleRep Algebra::induce(const GRep& rep, const std::string& label) const {
  const Ctx& ctx = params_.ctx;
  int ds = rep.dim();
  int nw = static_cast<int>(words_.size());
  int n = nw * ds;
  std::map<Word, int> windex;
  for (int i = 0; i < nw; ++i) windex[words_[i]] = i;

  auto action = [&](const SmashElement& x) {
    Mat m(ctx, n, n);
    for (int wi = 0; wi < nw; ++wi) {
      SmashElement prod = mul(x, word_elem(words_[wi]));
      for (const auto& [k, c] : prod.terms()) {
        int wj = windex.at(k.first);
        Mat g = rho(rep, k.second);
        for (int i2 = 0; i2 < ds; ++i2)
          for (int i1 = 0; i1 < ds; ++i1) {
            if (g.at(i1, i2).is_zero()) continue;
            m.at(wj * ds + i1, wi * ds + i2) += c * g.at(i1, i2);
          }
      }
    }
    return m;
  };

  ModuleRep m{params_, action(gen_g({1, 0})), action(gen_g({0, 1})), action(gen_a(0)), label};
  auto bad = verify(m);
  if (!bad.empty()) throw Error("induced module fails verification: " + bad[0]);
  return m;
}

ModuleRep Algebra::induce(IrrepLabel label) const {
  GroupIrrep ir = irrep_of(params_, label);
  return induce(GRep{params_, ir.s, ir.t}, "A(" + label.str() + ")");
}

ModuleRep Algebra::regular_module() const {
  const Ctx& ctx = params_.ctx;
  int nw = static_cast<int>(words_.size());
  int ng = static_cast<int>(group_.size());
  int n = nw * ng;
  std::map<Word, int> windex;
  for (int i = 0; i < nw; ++i) windex[words_[i]] = i;

  auto action = [&](const SmashElement& x) {
    Mat m(ctx, n, n);
    for (int wi = 0; wi < nw; ++wi)
      for (int gi = 0; gi < ng; ++gi) {
        SmashElement prod = mul(x, SmashElement::term(params_, words_[wi], group_[gi], params_.one()));
        for (const auto& [k, c] : prod.terms()) {
          int wj = windex.at(k.first);
          int gj = gindex_.at({k.second.a, k.second.b});
          m.at(wj * ng + gj, wi * ng + gi) += c;
        }
      }
    return m;
  };

  ModuleRep m{params_, action(gen_g({1, 0})), action(gen_g({0, 1})), action(gen_a(0)),
              "A(regular)"};
  auto bad = verify(m);
  if (!bad.empty()) throw Error("regular module fails verification: " + bad[0]);
  return m;
}

}  // namespace hopfrep
