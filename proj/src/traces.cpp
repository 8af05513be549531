#include "revy/traces.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "revy/printer.hpp"

namespace revy {

std::string print_trace(const Trace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += print_label(t[i]);
  }
  return out;
}

std::string print_obs_trace(const ObsTrace& t) {
  if (t.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += print_action(t[i]);
  }
  return out;
}

Trace observable(const Trace& t) {
  Trace out;
  for (const Label& l : t)
    if (!l.action.is_tau()) out.push_back(l);
  return out;
}

Trace complement(const Trace& t) {
  Trace out;
  out.reserve(t.size());
  for (const Label& l : t) out.push_back(Label{l.action.complement(), l.key});
  return out;
}

ObsTrace complement(const ObsTrace& t) {
  ObsTrace out;
  out.reserve(t.size());
  for (const Action& a : t) out.push_back(a.complement());
  return out;
}

ObsTrace obs_of(const Trace& t) {
  ObsTrace out;
  for (const Label& l : t)
    if (!l.action.is_tau()) out.push_back(l.action);
  return out;
}

Trace canonical_keys(const Trace& t) {
  std::map<Key, Key> seen;
  Trace out;
  out.reserve(t.size());
  for (const Label& l : t) {
    auto it = seen.find(l.key);
    if (it == seen.end())
      it = seen.emplace(l.key, static_cast<Key>(seen.size() + 1)).first;
    out.push_back(Label{l.action, it->second});
  }
  return out;
}

std::optional<TypedTrace> try_type_trace(const DepHistory& d, const Trace& t) {
  DepHistory after = d;
  for (const Label& l : t) {
    if (l.key == eps_key || after.contains(l.key)) return std::nullopt;
    after = after.pushed(l.key);
  }
  return TypedTrace{d, t, after};
}

TypedTrace type_trace(const DepHistory& d, const Trace& t) {
  auto tt = try_type_trace(d, t);
  if (!tt)
    throw std::invalid_argument("trace not typable over " + print_history(d) +
                                ": " + print_trace(t));
  return *tt;
}

namespace {

std::vector<Key> tail(const std::vector<Key>& v) {
  return std::vector<Key>(v.begin() + 1, v.end());
}

bool key_in(Key k, const std::vector<Key>& v) {
  return std::find(v.begin(), v.end(), k) != v.end();
}

void zip_hist_rec(const std::vector<Key>& d1, const std::vector<Key>& d2,
                  std::vector<Key>& acc, std::set<std::vector<Key>>& out) {
  if (d1.empty() && d2.empty()) {
    out.insert(acc);
    return;
  }
  // Left head goes first if fresh for the rest.
  if (!d1.empty()) {
    Key k = d1.front();
    if (!d2.empty() && d2.front() == k) {
      // aligned shared key
      if (!key_in(k, tail(d1)) && !key_in(k, tail(d2))) {
        acc.push_back(k);
        auto r1 = tail(d1), r2 = tail(d2);
        zip_hist_rec(r1, r2, acc, out);
        acc.pop_back();
      }
    }
    if (!key_in(k, d2)) {
      acc.push_back(k);
      auto r1 = tail(d1);
      zip_hist_rec(r1, d2, acc, out);
      acc.pop_back();
    }
  }
  if (!d2.empty()) {
    Key k = d2.front();
    if (!key_in(k, d1)) {
      acc.push_back(k);
      auto r2 = tail(d2);
      zip_hist_rec(d1, r2, acc, out);
      acc.pop_back();
    }
  }
}

}  // namespace

std::vector<DepHistory> zip_histories(const DepHistory& d1, const DepHistory& d2) {
  std::set<std::vector<Key>> out;
  std::vector<Key> acc;
  zip_hist_rec(d1.keys, d2.keys, acc, out);
  std::vector<DepHistory> res;
  for (const auto& keys : out) res.push_back(DepHistory{keys});
  return res;
}

namespace {

using Labels = std::vector<Label>;

// One derivation of the zip relation: the zipped before-history plus the
// zipped label sequence. The after-history follows from typing.
struct ZipResult {
  DepHistory before;
  Labels labels;
};

std::vector<ZipResult> zip_rec(const DepHistory& d1, const Labels& s1,
                               std::size_t i1, const DepHistory& d2,
                               const Labels& s2, std::size_t i2) {
  std::vector<ZipResult> out;
  if (i1 == s1.size() && i2 == s2.size()) {
    for (const DepHistory& d : zip_histories(d1, d2))
      out.push_back(ZipResult{d, {}});
    return out;
  }
  auto emit_from = [&](const std::vector<ZipResult>& subs, Key k, Label head) {
    for (const ZipResult& r : subs) {
      if (r.before.empty() || r.before.newest() != k) continue;
      ZipResult z;
      z.before = r.before.suffix_after(k);
      z.labels.push_back(head);
      z.labels.insert(z.labels.end(), r.labels.begin(), r.labels.end());
      out.push_back(std::move(z));
    }
  };
  if (i1 < s1.size()) {
    const Label& l = s1[i1];
    emit_from(zip_rec(d1.pushed(l.key), s1, i1 + 1, d2, s2, i2), l.key, l);
  }
  if (i2 < s2.size()) {
    const Label& l = s2[i2];
    emit_from(zip_rec(d1, s1, i1, d2.pushed(l.key), s2, i2 + 1), l.key, l);
  }
  if (i1 < s1.size() && i2 < s2.size()) {
    const Label& a = s1[i1];
    const Label& b = s2[i2];
    if (!a.action.is_tau() && b.action == a.action.complement() &&
        a.key == b.key) {
      emit_from(zip_rec(d1.pushed(a.key), s1, i1 + 1, d2.pushed(b.key), s2, i2 + 1),
                a.key, Label{tau_action(), a.key});
    }
  }
  return out;
}

}  // namespace

std::vector<TypedTrace> zip_traces(const TypedTrace& t1, const TypedTrace& t2,
                                   const DepHistory& target_before) {
  {
    // Precondition: the before-histories zip to the target.
    auto zs = zip_histories(t1.before, t2.before);
    bool ok = false;
    for (const auto& d : zs)
      if (d == target_before) ok = true;
    if (!ok)
      throw std::invalid_argument(
          "target history does not zip the component histories");
  }
  std::vector<TypedTrace> res;
  std::set<std::string> seen;
  for (ZipResult& z :
       zip_rec(t1.before, t1.labels, 0, t2.before, t2.labels, 0)) {
    if (!(z.before == target_before)) continue;
    auto typed = try_type_trace(target_before, z.labels);
    if (!typed) continue;
    std::string sig = print_trace(z.labels);
    if (seen.insert(sig).second) res.push_back(std::move(*typed));
  }
  return res;
}

namespace {

struct UnzipSearch {
  const TypedTrace& run;
  std::set<std::string> seen;
  std::vector<std::pair<TypedTrace, TypedTrace>> results;
  DepHistory left_before, right_before;

  void record(const Configuration& l, const Configuration& r, const Trace& t1,
              const Trace& t2) {
    std::string sig = print_trace(t1) + "/" + print_trace(t2);
    if (!seen.insert(sig).second) return;
    results.emplace_back(TypedTrace{left_before, t1, l.history},
                         TypedTrace{right_before, t2, r.history});
  }

  void go(const Configuration& l, const Configuration& r, std::size_t idx,
          Trace t1, Trace t2) {
    if (idx == run.labels.size()) {
      record(l, r, t1, t2);
      return;
    }
    const Label& step = run.labels[idx];
    if (!step.action.is_tau())
      throw std::invalid_argument("composed run must be all-internal");
    Key k = step.key;
    bool fresh_l = !keys_of(l).count(k);
    bool fresh_r = !keys_of(r).count(k);

    if (fresh_l) {
      for (auto& [lab, succ] : lts_transitions_with_key(l, k)) {
        if (!lab.action.is_tau()) continue;
        Trace n1 = t1;
        n1.push_back(lab);
        go(succ, r, idx + 1, n1, t2);
      }
    }
    if (fresh_r) {
      for (auto& [lab, succ] : lts_transitions_with_key(r, k)) {
        if (!lab.action.is_tau()) continue;
        Trace n2 = t2;
        n2.push_back(lab);
        go(l, succ, idx + 1, t1, n2);
      }
    }
    if (fresh_l && fresh_r) {
      auto lsteps = lts_transitions_with_key(l, k);
      auto rsteps = lts_transitions_with_key(r, k);
      for (auto& [labL, succL] : lsteps) {
        if (labL.action.is_tau()) continue;
        for (auto& [labR, succR] : rsteps) {
          if (!(labR.action == labL.action.complement())) continue;
          Trace n1 = t1, n2 = t2;
          n1.push_back(labL);
          n2.push_back(labR);
          go(succL, succR, idx + 1, n1, n2);
        }
      }
    }
  }
};

}  // namespace

std::vector<std::pair<TypedTrace, TypedTrace>> unzip_trace(
    const Configuration& left, const Configuration& right, const TypedTrace& run) {
  UnzipSearch search{run, {}, {}, left.history, right.history};
  search.go(canonical_config(left), canonical_config(right), 0, {}, {});
  if (search.results.empty())
    throw std::invalid_argument("run is not realizable by the composition");
  return search.results;
}

}  // namespace revy
