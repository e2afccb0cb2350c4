#include "betti/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "betti/betti.hpp"
#include "betti/delaunay.hpp"
#include "betti/filtration.hpp"
#include "betti/sampling.hpp"

namespace betti {

namespace {

// Rank over GF(2) of a matrix given as columns of row indices.
std::int64_t gf2_rank(const std::vector<std::vector<std::int32_t>>& columns, std::size_t rows) {
  const std::size_t words = (rows + 63) / 64;
  std::vector<std::vector<std::uint64_t>> basis;  // reduced columns, by pivot
  std::vector<std::int64_t> pivot_of(rows, -1);
  std::int64_t rank = 0;
  std::vector<std::uint64_t> col(words);
  for (const auto& c : columns) {
    std::fill(col.begin(), col.end(), 0);
    for (const auto r : c) col[r / 64] ^= std::uint64_t{1} << (r % 64);
    while (true) {
      std::int64_t top = -1;
      for (std::size_t w = words; w-- > 0;)
        if (col[w]) {
          top = static_cast<std::int64_t>(w * 64 + 63 - __builtin_clzll(col[w]));
          break;
        }
      if (top < 0) break;
      if (pivot_of[top] < 0) {
        pivot_of[top] = static_cast<std::int64_t>(basis.size());
        basis.push_back(col);
        ++rank;
        break;
      }
      const auto& b = basis[pivot_of[top]];
      for (std::size_t w = 0; w < words; ++w) col[w] ^= b[w];
    }
  }
  return rank;
}

std::array<std::int64_t, 4> betti_from_ranks(const std::array<std::int64_t, 4>& n,
                                             const std::array<std::int64_t, 5>& rank) {
  std::array<std::int64_t, 4> b{};
  for (int k = 0; k < 4; ++k) b[k] = n[k] - rank[k] - rank[k + 1];
  return b;
}

}  // namespace

std::array<std::int64_t, 4> gf2_betti(const std::array<std::vector<LabelTuple>, 4>& simplices) {
  std::array<std::map<LabelTuple, std::int32_t>, 4> index;
  std::array<std::int64_t, 4> n{};
  for (int k = 0; k < 4; ++k) {
    n[k] = static_cast<std::int64_t>(simplices[k].size());
    for (std::size_t i = 0; i < simplices[k].size(); ++i)
      index[k].emplace(simplices[k][i], static_cast<std::int32_t>(i));
  }
  std::array<std::int64_t, 5> rank{};
  for (int k = 1; k < 4; ++k) {
    std::vector<std::vector<std::int32_t>> cols;
    for (const auto& s : simplices[k]) {
      std::vector<std::int32_t> col;
      for (std::size_t j = 0; j < s.size(); ++j) {
        LabelTuple f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
        const auto it = index[k - 1].find(f);
        if (it == index[k - 1].end()) throw std::invalid_argument("complex is not closed under faces");
        col.push_back(it->second);
      }
      cols.push_back(std::move(col));
    }
    rank[k] = gf2_rank(cols, simplices[k - 1].size());
  }
  return betti_from_ranks(n, rank);
}

std::array<std::int64_t, 4> gf2_betti_from_cofacets(
    const SimplicialComplex& k, const std::array<std::vector<std::uint8_t>, 4>& keep) {
  std::array<std::int64_t, 4> n{};
  std::array<std::vector<std::int32_t>, 4> row_of;
  for (int dim = 0; dim <= k.dim; ++dim) {
    row_of[dim].assign(k.count(dim), -1);
    for (std::size_t i = 0; i < k.count(dim); ++i)
      if (keep[dim][i]) row_of[dim][i] = static_cast<std::int32_t>(n[dim]++);
  }
  std::array<std::int64_t, 5> rank{};
  for (int dim = 1; dim <= k.dim; ++dim) {
    std::vector<std::vector<std::int32_t>> cols(static_cast<std::size_t>(n[dim]));
    const auto& faces = k.tables[dim - 1];
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!keep[dim - 1][f]) continue;
      for (const auto c : faces.cofacets_of(f)) {
        if (!keep[dim][c]) continue;
        cols[row_of[dim][c]].push_back(row_of[dim - 1][f]);
      }
    }
    // A face listed twice for the same cofacet cancels over GF(2).
    for (auto& c : cols) {
      std::sort(c.begin(), c.end());
      std::vector<std::int32_t> odd;
      for (std::size_t i = 0; i < c.size();) {
        std::size_t j = i;
        while (j < c.size() && c[j] == c[i]) ++j;
        if ((j - i) % 2) odd.push_back(c[i]);
        i = j;
      }
      c = std::move(odd);
    }
    rank[dim] = gf2_rank(cols, static_cast<std::size_t>(n[dim - 1]));
  }
  return betti_from_ranks(n, rank);
}

OracleReport run_oracle_suite(int d, int instances, int max_n, std::uint64_t seed) {
  if (d != 2 && d != 3) throw std::invalid_argument("oracle suite needs d = 2 or 3");
  if (max_n < d + 2) throw std::invalid_argument("max-n too small for the dimension");
  OracleReport report;
  report.instances = instances;
  for (int inst = 0; inst < instances; ++inst) {
    const RngSpec spec{seed, static_cast<std::uint64_t>(inst) + (static_cast<std::uint64_t>(d) << 32)};
    auto rng = make_rng(spec);
    const int n = d + 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - d - 1));
    const auto ps = sample_points(n, d, rng);
    const auto k = augment_with_infinity(build_delaunay(ps, rng()));
    const auto th = alpha_thresholds(k);
    const auto mf = mark_filtration(k, build_filtration(k, th));
    const auto sig = signature(mf);
    report.euler_violations += euler_violations(mf, sig);

    const auto& order = mf.filtration.order;
    std::array<std::vector<LabelTuple>, 4> sub;
    for (std::size_t p = 0; p < order.size();) {
      const double r2 = order[p].radius_sq;
      for (; p < order.size() && order[p].radius_sq == r2; ++p)
        sub[order[p].dim].push_back(k.label_tuple(order[p].dim, order[p].index));
      const auto expect = gf2_betti(sub);
      const auto got = sig.at(std::sqrt(r2));
      ++report.thresholds_checked;
      if (expect != got) {
        ++report.mismatches;
        if (report.first_mismatch.empty()) {
          std::ostringstream os;
          os << "d=" << d << " instance " << inst << " (seed " << seed << ", n " << n << ") alpha "
             << std::sqrt(r2) << ": incremental (" << got[0] << ',' << got[1] << ',' << got[2]
             << ',' << got[3] << ") vs GF(2) (" << expect[0] << ',' << expect[1] << ','
             << expect[2] << ',' << expect[3] << ")";
          report.first_mismatch = os.str();
        }
      }
    }
  }
  return report;
}

}  // namespace betti
