#include "eternal/chords.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "eternal/errors.hpp"

namespace eternal {

namespace {

std::vector<int> offsets(const std::vector<int>& partner) {
  const int n = static_cast<int>(partner.size());
  std::vector<int> off(partner.size());
  for (int i = 0; i < n; ++i) off[static_cast<std::size_t>(i)] = ((partner[static_cast<std::size_t>(i)] - i) % n + n) % n;
  return off;
}

// Booth's least rotation.
std::size_t least_rotation(const std::vector<int>& s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const int sj = s[j % n];
    long i = f[j - k - 1];
    while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k;
}

unsigned long totient(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

void noncrossing_matchings(std::vector<int>& partner, int lo, int hi, std::vector<std::vector<int>>& out,
                           std::vector<std::pair<int, int>>& pending) {
  // Fill slots lo..hi-1, then continue with the pending intervals.
  if (lo >= hi) {
    if (pending.empty()) {
      out.push_back(partner);
      return;
    }
    const auto next = pending.back();
    pending.pop_back();
    noncrossing_matchings(partner, next.first, next.second, out, pending);
    pending.push_back(next);
    return;
  }
  for (int j = lo + 1; j < hi; j += 2) {
    partner[static_cast<std::size_t>(lo)] = j;
    partner[static_cast<std::size_t>(j)] = lo;
    pending.emplace_back(j + 1, hi);
    noncrossing_matchings(partner, lo + 1, j, out, pending);
    pending.pop_back();
  }
}

}  // namespace

ChordDiagram::ChordDiagram(std::vector<int> partner) : partner_(std::move(partner)) {
  const int n = static_cast<int>(partner_.size());
  if (n % 2 != 0) throw std::invalid_argument("chord diagram needs an even number of slots");
  for (int i = 0; i < n; ++i) {
    const int p = partner_[static_cast<std::size_t>(i)];
    if (p < 0 || p >= n || p == i || partner_[static_cast<std::size_t>(p)] != i)
      throw std::invalid_argument("partner array is not a perfect matching");
  }
}

ChordDiagram ChordDiagram::from_code(const std::string& code) {
  std::vector<int> partner(code.size(), -1);
  std::vector<int> stack;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (code[i] == '1') {
      stack.push_back(static_cast<int>(i));
    } else if (code[i] == '0') {
      if (stack.empty()) throw std::invalid_argument("unbalanced chord code");
      partner[i] = stack.back();
      partner[static_cast<std::size_t>(stack.back())] = static_cast<int>(i);
      stack.pop_back();
    } else {
      throw std::invalid_argument("chord code must be a word over {0, 1}");
    }
  }
  if (!stack.empty()) throw std::invalid_argument("unbalanced chord code");
  return ChordDiagram(std::move(partner));
}

bool ChordDiagram::noncrossing() const {
  const int n = slots();
  for (int a = 0; a < n; ++a) {
    const int b = partner_[static_cast<std::size_t>(a)];
    if (b < a) continue;
    for (int c = a + 1; c < b; ++c) {
      const int e = partner_[static_cast<std::size_t>(c)];
      if (e < a || e > b) return false;
    }
  }
  return true;
}

ChordDiagram ChordDiagram::rotated(int r) const {
  const int n = slots();
  if (n == 0) return *this;
  r = ((r % n) + n) % n;
  std::vector<int> out(partner_.size());
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>((i + r) % n)] = (partner_[static_cast<std::size_t>(i)] + r) % n;
  return ChordDiagram(std::move(out));
}

ChordDiagram ChordDiagram::canonical() const {
  if (partner_.empty()) return *this;
  const std::size_t k = least_rotation(offsets(partner_));
  // Rotation moving slot k to slot 0.
  return rotated(-static_cast<int>(k));
}

std::string ChordDiagram::code() const {
  if (!noncrossing()) throw std::invalid_argument("code requires a noncrossing diagram");
  std::string out(partner_.size(), '0');
  for (std::size_t i = 0; i < partner_.size(); ++i)
    if (partner_[i] > static_cast<int>(i)) out[i] = '1';
  return out;
}

int PlaneTree::edges() const {
  std::size_t deg = 0;
  for (const auto& a : adjacency) deg += a.size();
  return static_cast<int>(deg / 2);
}

bool PlaneTree::valid() const {
  const int n = vertices();
  if (n == 0) return false;
  if (edges() != n - 1) return false;
  for (int v = 0; v < n; ++v) {
    std::set<int> seen;
    for (int u : adjacency[static_cast<std::size_t>(v)]) {
      if (u < 0 || u >= n || u == v || !seen.insert(u).second) return false;
      const auto& back = adjacency[static_cast<std::size_t>(u)];
      if (std::find(back.begin(), back.end(), v) == back.end()) return false;
    }
  }
  std::vector<bool> reached(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  reached[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : adjacency[static_cast<std::size_t>(v)])
      if (!reached[static_cast<std::size_t>(u)]) {
        reached[static_cast<std::size_t>(u)] = true;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n;
}

PlaneTree tree_from_diagram(const ChordDiagram& diagram) {
  if (!diagram.noncrossing()) throw std::invalid_argument("diagram has crossing chords");
  PlaneTree t;
  t.adjacency.emplace_back();
  std::vector<int> parent{-1};
  int cur = 0;
  const auto& p = diagram.partner();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > static_cast<int>(i)) {
      const int v = t.vertices();
      t.adjacency.push_back({cur});
      t.adjacency[static_cast<std::size_t>(cur)].push_back(v);
      parent.push_back(cur);
      cur = v;
    } else {
      cur = parent[static_cast<std::size_t>(cur)];
    }
  }
  return t;
}

ChordDiagram diagram_from_tree(const PlaneTree& tree) {
  if (!tree.valid()) throw std::invalid_argument("not a tree");
  const int m = tree.edges();
  if (m == 0) throw std::invalid_argument("tree without edges has no chord diagram");
  std::vector<int> partner(static_cast<std::size_t>(2 * m), -1);
  std::vector<std::vector<int>> first_slot(tree.adjacency.size());
  for (std::size_t v = 0; v < tree.adjacency.size(); ++v) first_slot[v].assign(tree.adjacency[v].size(), -1);

  int v = 0;
  std::size_t idx = 0;  // position in adjacency[v] of the edge about to be walked
  for (int slot = 0; slot < 2 * m; ++slot) {
    const auto& adj = tree.adjacency[static_cast<std::size_t>(v)];
    const int u = adj[idx];
    const auto& back = tree.adjacency[static_cast<std::size_t>(u)];
    const std::size_t pos = static_cast<std::size_t>(std::find(back.begin(), back.end(), v) - back.begin());
    if (first_slot[static_cast<std::size_t>(u)][pos] >= 0) {
      const int other = first_slot[static_cast<std::size_t>(u)][pos];
      partner[static_cast<std::size_t>(slot)] = other;
      partner[static_cast<std::size_t>(other)] = slot;
    } else {
      first_slot[static_cast<std::size_t>(v)][idx] = slot;
    }
    v = u;
    idx = (pos + 1) % back.size();
  }
  return ChordDiagram(std::move(partner));
}

mpz_class catalan(unsigned m) { return binomial(2 * m, m) / (m + 1); }

mpz_class count_portraits(int d) {
  if (d < 2) throw DomainError("count_portraits requires d >= 2");
  if (d == 2) return 1;
  const unsigned long m = static_cast<unsigned long>(d - 1);
  const unsigned long du = static_cast<unsigned long>(d);
  mpq_class total(binomial(2 * m, m), mpz_class(2 * m * du));
  if (d % 2 == 0) total += mpq_class(binomial(du, du / 2), mpz_class(4 * m));
  total += mpq_class(mpz_class(totient(m)), mpz_class(m));
  for (unsigned long k = 2; k < m; ++k)
    if (m % k == 0) total += mpq_class(binomial(2 * k, k) * totient(m / k), mpz_class(2 * m));
  total.canonicalize();
  if (total.get_den() != 1) throw NumericalError("tree count formula produced a non-integer");
  return total.get_num();
}

std::vector<ChordDiagram> enumerate_diagrams(int d) {
  if (d < 2) throw DomainError("enumerate_diagrams requires d >= 2");
  if (d > 14) throw DomainError("enumeration is limited to d <= 14");
  const int n = 2 * (d - 1);
  std::vector<int> partner(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> raw;
  std::vector<std::pair<int, int>> pending;
  noncrossing_matchings(partner, 0, n, raw, pending);

  std::set<std::string> seen;
  std::vector<ChordDiagram> out;
  for (auto& p : raw) {
    ChordDiagram c = ChordDiagram(std::move(p)).canonical();
    if (seen.insert(c.code()).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const ChordDiagram& a, const ChordDiagram& b) { return a.code() < b.code(); });
  return out;
}

}  // namespace eternal
