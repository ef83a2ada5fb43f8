#include "caqr/matching.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "caqr/error.hpp"

namespace caqr {

namespace {

// Vertices are 0..n-1, blossoms n..2n-1. Edge k has endpoints 2k and 2k+1;
// endpoint p belongs to vertex endpoint[p], and p ^ 1 is the other end.
class Blossom {
 public:
  Blossom(int n, std::vector<WeightedEdge> edges, bool max_cardinality)
      : n_(n), edges_(std::move(edges)), maxcard_(max_cardinality) {}

  std::vector<int> solve();

 private:
  using I64 = std::int64_t;

  I64 slack(int k) const {
    const auto& e = edges_[k];
    return dual_[e.u] + dual_[e.v] - 2 * e.weight;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : childs_[b]) leaves(t, out);
  }
  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p);
  int scan_blossom(int v, int w);
  void add_blossom(int base, int k);
  void expand_blossom(int b, bool endstage);
  void augment_blossom(int b, int v);
  void augment_matching(int k);

  int n_;
  std::vector<WeightedEdge> edges_;
  bool maxcard_;

  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> childs_;
  std::vector<int> base_;
  std::vector<std::vector<int>> endps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> bestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<int> unused_;
  std::vector<I64> dual_;
  std::vector<bool> allow_;
  std::vector<int> queue_;
};

void Blossom::assign_label(int w, int t, int p) {
  int b = inblossom_[w];
  label_[w] = label_[b] = t;
  labelend_[w] = labelend_[b] = p;
  bestedge_[w] = bestedge_[b] = -1;
  if (t == 1) {
    leaves(b, queue_);
  } else if (t == 2) {
    int base = base_[b];
    assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
  }
}

int Blossom::scan_blossom(int v, int w) {
  std::vector<int> path;
  int base = -1;
  while (v != -1 || w != -1) {
    int b = inblossom_[v];
    if (label_[b] & 4) {
      base = base_[b];
      break;
    }
    path.push_back(b);
    label_[b] = 5;
    if (labelend_[b] == -1) {
      v = -1;
    } else {
      v = endpoint_[labelend_[b]];
      b = inblossom_[v];
      v = endpoint_[labelend_[b]];
    }
    if (w != -1) std::swap(v, w);
  }
  for (int b : path) label_[b] = 1;
  return base;
}

void Blossom::add_blossom(int base, int k) {
  int v = edges_[k].u;
  int w = edges_[k].v;
  int bb = inblossom_[base];
  int bv = inblossom_[v];
  int bw = inblossom_[w];
  int b = unused_.back();
  unused_.pop_back();
  base_[b] = base;
  parent_[b] = -1;
  parent_[bb] = b;
  auto& path = childs_[b];
  auto& endps = endps_[b];
  path.clear();
  endps.clear();
  while (bv != bb) {
    parent_[bv] = b;
    path.push_back(bv);
    endps.push_back(labelend_[bv]);
    v = endpoint_[labelend_[bv]];
    bv = inblossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    parent_[bw] = b;
    path.push_back(bw);
    endps.push_back(labelend_[bw] ^ 1);
    w = endpoint_[labelend_[bw]];
    bw = inblossom_[w];
  }
  label_[b] = 1;
  labelend_[b] = labelend_[bb];
  dual_[b] = 0;
  for (int x : leaves(b)) {
    if (label_[inblossom_[x]] == 2) queue_.push_back(x);
    inblossom_[x] = b;
  }
  std::vector<int> bestedgeto(static_cast<std::size_t>(2 * n_), -1);
  for (int sub : path) {
    std::vector<std::vector<int>> nblists;
    if (!has_bestedges_[sub]) {
      for (int x : leaves(sub)) {
        std::vector<int> ks;
        for (int p : neighbend_[x]) ks.push_back(p / 2);
        nblists.push_back(std::move(ks));
      }
    } else {
      nblists.push_back(bestedges_[sub]);
    }
    for (const auto& nblist : nblists) {
      for (int kk : nblist) {
        int i = edges_[kk].u;
        int j = edges_[kk].v;
        if (inblossom_[j] == b) std::swap(i, j);
        int bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 &&
            (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
          bestedgeto[bj] = kk;
        }
      }
    }
    bestedges_[sub].clear();
    has_bestedges_[sub] = false;
    bestedge_[sub] = -1;
  }
  bestedges_[b].clear();
  for (int kk : bestedgeto) {
    if (kk != -1) bestedges_[b].push_back(kk);
  }
  has_bestedges_[b] = true;
  bestedge_[b] = -1;
  for (int kk : bestedges_[b]) {
    if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }
}

void Blossom::expand_blossom(int b, bool endstage) {
  for (int s : childs_[b]) {
    parent_[s] = -1;
    if (s < n_) {
      inblossom_[s] = s;
    } else if (endstage && dual_[s] == 0) {
      expand_blossom(s, endstage);
    } else {
      for (int x : leaves(s)) inblossom_[x] = s;
    }
  }
  if (!endstage && label_[b] == 2) {
    const auto& ch = childs_[b];
    const int len = static_cast<int>(ch.size());
    auto at = [&](int idx) { return ch[((idx % len) + len) % len]; };
    auto endp = [&](int idx) { return endps_[b][((idx % len) + len) % len]; };
    int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
    int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
    int jstep;
    int endptrick;
    if (j & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    int p = labelend_[b];
    while (j != 0) {
      label_[endpoint_[p ^ 1]] = 0;
      label_[endpoint_[endp(j - endptrick) ^ endptrick ^ 1]] = 0;
      assign_label(endpoint_[p ^ 1], 2, p);
      allow_[endp(j - endptrick) / 2] = true;
      j += jstep;
      p = endp(j - endptrick) ^ endptrick;
      allow_[p / 2] = true;
      j += jstep;
    }
    int bv = at(j);
    label_[endpoint_[p ^ 1]] = label_[bv] = 2;
    labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
    bestedge_[bv] = -1;
    j += jstep;
    while (at(j) != entrychild) {
      bv = at(j);
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      int found = -1;
      for (int x : leaves(bv)) {
        if (label_[x] != 0) {
          found = x;
          break;
        }
      }
      if (found >= 0) {
        label_[found] = 0;
        label_[endpoint_[mate_[base_[bv]]]] = 0;
        assign_label(found, 2, labelend_[found]);
      }
      j += jstep;
    }
  }
  label_[b] = labelend_[b] = -1;
  childs_[b].clear();
  endps_[b].clear();
  base_[b] = -1;
  bestedges_[b].clear();
  has_bestedges_[b] = false;
  bestedge_[b] = -1;
  unused_.push_back(b);
}

void Blossom::augment_blossom(int b, int v) {
  int t = v;
  while (parent_[t] != b) t = parent_[t];
  if (t >= n_) augment_blossom(t, v);
  auto& ch = childs_[b];
  auto& ep = endps_[b];
  const int len = static_cast<int>(ch.size());
  auto wrap = [len](int idx) { return ((idx % len) + len) % len; };
  int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
  int j = i;
  int jstep;
  int endptrick;
  if (i & 1) {
    j -= len;
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = ch[wrap(j)];
    int p = ep[wrap(j - endptrick)] ^ endptrick;
    if (t >= n_) augment_blossom(t, endpoint_[p]);
    j += jstep;
    t = ch[wrap(j)];
    if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
    mate_[endpoint_[p]] = p ^ 1;
    mate_[endpoint_[p ^ 1]] = p;
  }
  std::rotate(ch.begin(), ch.begin() + i, ch.end());
  std::rotate(ep.begin(), ep.begin() + i, ep.end());
  base_[b] = base_[ch[0]];
}

void Blossom::augment_matching(int k) {
  const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
  for (const auto& sp : ends) {
    int s = sp[0];
    int p = sp[1];
    while (true) {
      int bs = inblossom_[s];
      if (bs >= n_) augment_blossom(bs, s);
      mate_[s] = p;
      if (labelend_[bs] == -1) break;
      int t = endpoint_[labelend_[bs]];
      int bt = inblossom_[t];
      s = endpoint_[labelend_[bt]];
      int j = endpoint_[labelend_[bt] ^ 1];
      if (bt >= n_) augment_blossom(bt, j);
      mate_[j] = labelend_[bt];
      p = labelend_[bt] ^ 1;
    }
  }
}

std::vector<int> Blossom::solve() {
  const int nedge = static_cast<int>(edges_.size());
  if (nedge == 0 || n_ == 0) return std::vector<int>(static_cast<std::size_t>(n_), -1);
  I64 maxweight = 0;
  for (const auto& e : edges_) maxweight = std::max(maxweight, e.weight);
  endpoint_.resize(static_cast<std::size_t>(2 * nedge));
  for (int p = 0; p < 2 * nedge; ++p) {
    endpoint_[p] = (p % 2 == 0) ? edges_[p / 2].u : edges_[p / 2].v;
  }
  neighbend_.assign(static_cast<std::size_t>(n_), {});
  for (int k = 0; k < nedge; ++k) {
    neighbend_[edges_[k].u].push_back(2 * k + 1);
    neighbend_[edges_[k].v].push_back(2 * k);
  }
  const std::size_t n2 = static_cast<std::size_t>(2 * n_);
  mate_.assign(static_cast<std::size_t>(n_), -1);
  label_.assign(n2, 0);
  labelend_.assign(n2, -1);
  inblossom_.resize(static_cast<std::size_t>(n_));
  std::iota(inblossom_.begin(), inblossom_.end(), 0);
  parent_.assign(n2, -1);
  childs_.assign(n2, {});
  base_.assign(n2, -1);
  for (int v = 0; v < n_; ++v) base_[v] = v;
  endps_.assign(n2, {});
  bestedge_.assign(n2, -1);
  bestedges_.assign(n2, {});
  has_bestedges_.assign(n2, false);
  unused_.clear();
  for (int b = n_; b < 2 * n_; ++b) unused_.push_back(b);
  dual_.assign(n2, 0);
  for (int v = 0; v < n_; ++v) dual_[v] = maxweight;
  allow_.assign(static_cast<std::size_t>(nedge), false);

  for (int stage = 0; stage < n_; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = n_; b < 2 * n_; ++b) {
      bestedges_[b].clear();
      has_bestedges_[b] = false;
    }
    std::fill(allow_.begin(), allow_.end(), false);
    queue_.clear();
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
    }
    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        int v = queue_.back();
        queue_.pop_back();
        for (int p : neighbend_[v]) {
          int k = p / 2;
          int w = endpoint_[p];
          if (inblossom_[v] == inblossom_[w]) continue;
          I64 kslack = 0;
          if (!allow_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allow_[k] = true;
          }
          if (allow_[k]) {
            if (label_[inblossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            int b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
          }
        }
      }
      if (augmented) break;

      int deltatype = -1;
      I64 delta = 0;
      int deltaedge = -1;
      int deltablossom = -1;
      if (!maxcard_) {
        deltatype = 1;
        delta = *std::min_element(dual_.begin(), dual_.begin() + n_);
      }
      for (int v = 0; v < n_; ++v) {
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          I64 d = slack(bestedge_[v]);
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge_[v];
          }
        }
      }
      for (int b = 0; b < 2 * n_; ++b) {
        if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          I64 d = slack(bestedge_[b]) / 2;
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge_[b];
          }
        }
      }
      for (int b = n_; b < 2 * n_; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 &&
            (deltatype == -1 || dual_[b] < delta)) {
          delta = dual_[b];
          deltatype = 4;
          deltablossom = b;
        }
      }
      if (deltatype == -1) {
        deltatype = 1;
        delta = std::max<I64>(0, *std::min_element(dual_.begin(), dual_.begin() + n_));
      }
      for (int v = 0; v < n_; ++v) {
        if (label_[inblossom_[v]] == 1) {
          dual_[v] -= delta;
        } else if (label_[inblossom_[v]] == 2) {
          dual_[v] += delta;
        }
      }
      for (int b = n_; b < 2 * n_; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1) {
          if (label_[b] == 1) {
            dual_[b] += delta;
          } else if (label_[b] == 2) {
            dual_[b] -= delta;
          }
        }
      }
      if (deltatype == 1) break;
      if (deltatype == 2) {
        allow_[deltaedge] = true;
        int i = edges_[deltaedge].u;
        int j = edges_[deltaedge].v;
        if (label_[inblossom_[i]] == 0) std::swap(i, j);
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allow_[deltaedge] = true;
        queue_.push_back(edges_[deltaedge].u);
      } else {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented) break;
    for (int b = n_; b < 2 * n_; ++b) {
      if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0) {
        expand_blossom(b, true);
      }
    }
  }
  std::vector<int> result(static_cast<std::size_t>(n_), -1);
  for (int v = 0; v < n_; ++v) {
    if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
  }
  return result;
}

}  // namespace

std::vector<int> max_weight_matching(int num_vertices,
                                     const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality) {
  // Doubling keeps every dual variable and half-slack integral.
  std::vector<WeightedEdge> clean;
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices || e.v >= num_vertices) {
      throw InvalidArgument("matching edge endpoint out of range");
    }
    if (e.u != e.v) clean.push_back({e.u, e.v, 2 * e.weight});
  }
  Blossom solver(num_vertices, std::move(clean), max_cardinality);
  return solver.solve();
}

std::vector<int> greedy_matching(int num_vertices, const std::vector<WeightedEdge>& edges) {
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return edges[a].weight > edges[b].weight; });
  std::vector<int> mate(static_cast<std::size_t>(num_vertices), -1);
  for (int k : order) {
    const auto& e = edges[k];
    if (e.u == e.v || mate[e.u] >= 0 || mate[e.v] >= 0) continue;
    mate[e.u] = e.v;
    mate[e.v] = e.u;
  }
  return mate;
}

std::int64_t matching_weight(const std::vector<int>& mate,
                             const std::vector<WeightedEdge>& edges) {
  std::map<std::pair<int, int>, std::int64_t> best;
  for (const auto& e : edges) {
    auto key = std::minmax(e.u, e.v);
    auto [it, inserted] = best.emplace(key, e.weight);
    if (!inserted) it->second = std::max(it->second, e.weight);
  }
  std::int64_t total = 0;
  for (int v = 0; v < static_cast<int>(mate.size()); ++v) {
    if (mate[v] > v) total += best.at({v, mate[v]});
  }
  return total;
}

}  // namespace caqr
