#include "bordcalc/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

#include "bordcalc/error.hpp"

namespace bordcalc {

// ---------------------------------------------------------------------------
// Word

Word Word::from_letters(const std::vector<std::pair<std::size_t, int>>& letters) {
  std::vector<std::pair<std::size_t, int>> stack;
  for (const auto& l : letters) {
    if (!stack.empty() && stack.back().first == l.first && stack.back().second == -l.second)
      stack.pop_back();
    else
      stack.push_back(l);
  }
  Word w;
  for (const auto& [g, s] : stack) {
    if (!w.syllables_.empty() && w.syllables_.back().first == g)
      w.syllables_.back().second += s;
    else
      w.syllables_.emplace_back(g, s);
  }
  return w;
}

std::vector<std::pair<std::size_t, int>> Word::letters() const {
  std::vector<std::pair<std::size_t, int>> out;
  for (const auto& [g, e] : syllables_) {
    int s = e > 0 ? 1 : -1;
    for (long long i = 0; i < (e > 0 ? e : -e); ++i) out.emplace_back(g, s);
  }
  return out;
}

std::size_t Word::length() const noexcept {
  std::size_t n = 0;
  for (const auto& s : syllables_) n += static_cast<std::size_t>(s.second > 0 ? s.second : -s.second);
  return n;
}

Word Word::inverse() const {
  Word w;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) w.syllables_.emplace_back(it->first, -it->second);
  return w;
}

Word operator*(const Word& a, const Word& b) {
  auto la = a.letters();
  auto lb = b.letters();
  la.insert(la.end(), lb.begin(), lb.end());
  return Word::from_letters(la);
}

std::string Word::to_string(std::span<const std::string> labels) const {
  if (syllables_.empty()) return "e";
  std::string out;
  for (const auto& [g, e] : syllables_) {
    if (!out.empty()) out += '*';
    out += labels[g];
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// parser

namespace {

using Letters = std::vector<std::pair<std::size_t, int>>;

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string> labels) : text_(text), labels_(std::move(labels)) {}

  Presentation presentation() {
    expect('<');
    Presentation p;
    do {
      auto label = identifier();
      if (std::find(p.labels.begin(), p.labels.end(), label) != p.labels.end())
        error("duplicate generator label '" + label + "'");
      p.labels.push_back(label);
    } while (accept(','));
    expect('|');
    labels_ = p.labels;
    if (!peek('>')) {
      do {
        p.relators.push_back(Word::from_letters(expr()));
      } while (accept(','));
    }
    expect('>');
    end();
    return p;
  }

  Word single_expr() {
    auto w = Word::from_letters(expr());
    end();
    return w;
  }

 private:
  Letters expr() {
    Letters u = word();
    if (accept('=')) {
      Letters v = word();
      append_inverse(u, v);
    }
    return u;
  }

  Letters word() {
    Letters w = factor();
    while (accept('*')) {
      auto f = factor();
      w.insert(w.end(), f.begin(), f.end());
    }
    return w;
  }

  Letters factor() {
    Letters base = atom();
    if (!accept('^')) return base;
    long long k = integer();
    Letters out;
    if (k < 0) {
      Letters inv;
      append_inverse(inv, base);
      base = std::move(inv);
      k = -k;
    }
    if (k > 1000000) error("exponent too large");
    for (long long i = 0; i < k; ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
  }

  Letters atom() {
    skip_ws();
    if (accept('(')) {
      auto w = word();
      expect(')');
      return w;
    }
    if (accept('[')) {
      auto x = word();
      expect(',');
      auto y = word();
      expect(']');
      Letters out = x;
      out.insert(out.end(), y.begin(), y.end());
      append_inverse(out, x);
      append_inverse(out, y);
      return out;
    }
    auto save_line = line_, save_col = col_;
    auto label = identifier();
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw ParseError("unknown generator label '" + label + "'", save_line, save_col);
    return {{static_cast<std::size_t>(it - labels_.begin()), 1}};
  }

  static void append_inverse(Letters& out, const Letters& w) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
  }

  std::string identifier() {
    skip_ws();
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      error("expected generator label");
    std::string out;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      out += advance();
    return out;
  }

  long long integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      advance();
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) error("expected integer");
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (advance() - '0');
      if (v > 1000000000LL) error("integer too large");
    }
    return neg ? -v : v;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  void end() {
    skip_ws();
    if (pos_ != text_.size()) error("unexpected trailing input");
  }

  [[noreturn]] void error(const std::string& msg) {
    skip_ws();
    throw ParseError(msg, line_, col_);
  }

  std::string_view text_;
  std::vector<std::string> labels_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

Presentation parse_presentation(std::string_view text) { return Parser(text, {}).presentation(); }

Word parse_word(std::string_view text, std::span<const std::string> labels) {
  return Parser(text, std::vector<std::string>(labels.begin(), labels.end())).single_expr();
}

Elem evaluate(const FiniteGroup& g, const Word& w, std::span<const Elem> images) {
  Elem x = FiniteGroup::identity;
  for (const auto& [gen, e] : w.syllables()) {
    if (gen >= images.size()) fail(ErrorKind::Input, "word uses a generator without an image");
    x = g.mul(x, g.pow(images[gen], e));
  }
  return x;
}

Elem evaluate_word(const FiniteGroup& g, std::string_view text) {
  return evaluate(g, parse_word(text, g.labels()), g.generators());
}

// ---------------------------------------------------------------------------
// Todd-Coxeter

namespace {

class Enumerator {
 public:
  Enumerator(const Presentation& p, std::size_t max_cosets) : max_(max_cosets), ncols_(2 * p.labels.size()) {
    for (const auto& r : p.relators) {
      std::vector<std::size_t> cols;
      for (auto [g, s] : r.letters()) cols.push_back(2 * g + (s > 0 ? 0 : 1));
      if (!cols.empty()) relators_.push_back(std::move(cols));
    }
    new_coset();
  }

  void run() {
    for (std::size_t alpha = 0; alpha < parent_.size(); ++alpha) {
      if (!live(alpha)) continue;
      for (const auto& r : relators_) {
        scan_and_fill(alpha, r);
        if (!live(alpha)) break;
      }
      if (!live(alpha)) continue;
      for (std::size_t x = 0; x < ncols_; ++x)
        if (entry(alpha, x) < 0) define(alpha, x);
    }
  }

  CosetTable finish(const Presentation& p) {
    // standardize: breadth-first from coset 0 over columns in order
    std::vector<std::int32_t> renum(parent_.size(), -1);
    std::vector<std::size_t> order{0};
    renum[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t x = 0; x < ncols_; ++x) {
        auto y = static_cast<std::size_t>(entry(order[i], x));
        if (renum[y] < 0) {
          renum[y] = static_cast<std::int32_t>(order.size());
          order.push_back(y);
        }
      }
    CosetTable t;
    t.labels = p.labels;
    t.relators = p.relators;
    t.rows = order.size();
    t.entries.assign(t.rows * ncols_, -1);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t x = 0; x < ncols_; ++x) t.entries[i * ncols_ + x] = renum[entry(order[i], x)];
    t.complete = true;
    return t;
  }

 private:
  static std::size_t inv_col(std::size_t x) { return x ^ 1u; }
  bool live(std::size_t c) const { return parent_[c] == c; }
  std::int32_t& entry(std::size_t c, std::size_t x) { return table_[c * ncols_ + x]; }

  std::size_t new_coset() {
    std::size_t c = parent_.size();
    parent_.push_back(c);
    table_.resize(table_.size() + ncols_, -1);
    ++live_count_;
    return c;
  }

  void define(std::size_t c, std::size_t x) {
    if (parent_.size() >= max_) {
      lookahead();
      if (parent_.size() >= max_ || !live(c) || entry(c, x) >= 0) {
        if (parent_.size() >= max_)
          fail(ErrorKind::Resource, "coset enumeration exceeded " + std::to_string(max_) +
                                        " cosets (the presentation may define a larger or infinite group)");
        return;
      }
    }
    std::size_t d = new_coset();
    entry(c, x) = static_cast<std::int32_t>(d);
    entry(d, inv_col(x)) = static_cast<std::int32_t>(c);
  }

  // Scan every live coset under every relator without defining new cosets, then compact.
  void lookahead() {
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (!live(c)) continue;
      for (const auto& r : relators_) {
        scan(c, r);
        if (!live(c)) break;
      }
    }
    compact();
  }

  void compact() {
    std::vector<std::int32_t> renum(parent_.size(), -1);
    std::size_t next = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (live(c)) renum[c] = static_cast<std::int32_t>(next++);
    if (next == parent_.size()) return;
    std::vector<std::int32_t> table(next * ncols_, -1);
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (!live(c)) continue;
      for (std::size_t x = 0; x < ncols_; ++x) {
        auto v = entry(c, x);
        table[static_cast<std::size_t>(renum[c]) * ncols_ + x] = v < 0 ? -1 : renum[static_cast<std::size_t>(v)];
      }
    }
    table_ = std::move(table);
    parent_.resize(next);
    for (std::size_t c = 0; c < next; ++c) parent_[c] = c;
    pending_renumber_ = std::move(renum);
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      auto next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::size_t k, std::size_t l, std::deque<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    --live_count_;
    queue.push_back(l);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      std::size_t g = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < ncols_; ++x) {
        auto d = entry(g, x);
        if (d < 0) continue;
        auto delta = static_cast<std::size_t>(d);
        if (entry(delta, inv_col(x)) == static_cast<std::int32_t>(g)) entry(delta, inv_col(x)) = -1;
        std::size_t mu = rep(g), nu = rep(delta);
        if (entry(mu, x) >= 0) {
          merge(nu, static_cast<std::size_t>(entry(mu, x)), queue);
        } else if (entry(nu, inv_col(x)) >= 0) {
          merge(mu, static_cast<std::size_t>(entry(nu, inv_col(x))), queue);
        } else {
          entry(mu, x) = static_cast<std::int32_t>(nu);
          entry(nu, inv_col(x)) = static_cast<std::int32_t>(mu);
        }
      }
    }
  }

  // Returns false when the scan stopped at a gap of two or more letters.
  bool scan(std::size_t alpha, const std::vector<std::size_t>& w) {
    std::size_t f = alpha, b = alpha;
    std::size_t i = 0, j = w.size();
    while (i < j && entry(f, w[i]) >= 0) f = static_cast<std::size_t>(entry(f, w[i++]));
    if (i == j) {
      if (f != b) coincidence(f, b);
      return true;
    }
    while (j > i && entry(b, inv_col(w[j - 1])) >= 0) b = static_cast<std::size_t>(entry(b, inv_col(w[--j])));
    if (j == i) {
      coincidence(f, b);
      return true;
    }
    if (j == i + 1) {
      entry(f, w[i]) = static_cast<std::int32_t>(b);
      entry(b, inv_col(w[i])) = static_cast<std::int32_t>(f);
      return true;
    }
    return false;
  }

  void scan_and_fill(std::size_t& alpha, const std::vector<std::size_t>& w) {
    while (!scan(alpha, w)) {
      // define the first missing entry along the forward trace, then rescan
      std::size_t f = alpha, i = 0;
      while (entry(f, w[i]) >= 0) f = static_cast<std::size_t>(entry(f, w[i++]));
      pending_renumber_.clear();
      define(f, w[i]);
      if (!pending_renumber_.empty()) {
        auto r = pending_renumber_[alpha];
        if (r < 0) return;  // alpha died during lookahead; caller checks liveness
        alpha = static_cast<std::size_t>(r);
        pending_renumber_.clear();
      }
      if (!live(alpha)) return;
    }
  }

  std::size_t max_;
  std::size_t ncols_;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<std::size_t> parent_;
  std::vector<std::int32_t> table_;
  std::size_t live_count_ = 0;
  std::vector<std::int32_t> pending_renumber_;
};

}  // namespace

CosetTable todd_coxeter(const Presentation& p, std::size_t max_cosets) {
  if (max_cosets < 1) fail(ErrorKind::Precondition, "max_cosets must be at least 1");
  if (p.labels.empty()) {
    CosetTable t;
    t.rows = 1;
    t.complete = true;
    t.relators = p.relators;
    return t;
  }
  Enumerator e(p, max_cosets);
  e.run();
  return e.finish(p);
}

FiniteGroup coset_table_to_group(const CosetTable& t) {
  if (!t.complete) fail(ErrorKind::State, "coset table is not complete");
  const std::size_t n = t.rows, ncols = t.columns();
  for (auto v : t.entries)
    if (v < 0) fail(ErrorKind::State, "coset table has undefined entries");
  if (n > kDefaultOrderCap) fail(ErrorKind::Resource, "realized group exceeds order cap");
  // spanning tree from coset 0
  std::vector<std::pair<std::size_t, std::size_t>> via(n, {0, 0});
  std::vector<std::size_t> order{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t x = 0; x < ncols; ++x) {
      auto y = static_cast<std::size_t>(t.at(order[i], x));
      if (!seen[y]) {
        seen[y] = 1;
        via[y] = {order[i], x};
        order.push_back(y);
      }
    }
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    table[a * n] = static_cast<Elem>(a);
    for (std::size_t k = 1; k < order.size(); ++k) {
      auto b = order[k];
      auto [pb, x] = via[b];
      table[a * n + b] = static_cast<Elem>(t.at(table[a * n + pb], x));
    }
  }
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < t.labels.size(); ++i) gens.push_back(static_cast<Elem>(t.at(0, 2 * i)));
  return FiniteGroup::from_table(std::move(table), n, std::move(gens), t.labels);
}

FiniteGroup group_from_presentation(std::string_view text, std::size_t max_cosets) {
  return coset_table_to_group(todd_coxeter(parse_presentation(text), max_cosets));
}

}  // namespace bordcalc
