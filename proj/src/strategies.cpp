#include "poscars/strategies.hpp"

#include <algorithm>
#include <cmath>

namespace poscars {

ChainingVariant variant_from_string(const std::string& s) {
  if (s == "poscars") return ChainingVariant::Poscars;
  if (s == "p-pod") return ChainingVariant::PPod;
  if (s == "p-bs") return ChainingVariant::PBs;
  if (s == "p-bf") return ChainingVariant::PBf;
  if (s == "random") return ChainingVariant::Random;
  if (s == "jsq") return ChainingVariant::Jsq;
  if (s == "onehop") return ChainingVariant::OneHop;
  throw std::invalid_argument("unknown scheduler: " + s);
}

std::string to_string(ChainingVariant v) {
  switch (v) {
    case ChainingVariant::Poscars: return "poscars";
    case ChainingVariant::PPod: return "p-pod";
    case ChainingVariant::PBs: return "p-bs";
    case ChainingVariant::PBf: return "p-bf";
    case ChainingVariant::Random: return "random";
    case ChainingVariant::Jsq: return "jsq";
    case ChainingVariant::OneHop: return "onehop";
  }
  return "?";
}

namespace {

double unit_score(const ControlParams& p, const SuccessorView& s) {
  return p.V * s.w + p.alpha * static_cast<double>(s.queue);
}

// probed indices, then sorted by (score, server id)
std::vector<int> probe_and_rank(std::span<const SuccessorView> succ, int probes,
                                const ControlParams& p, Rng& rng) {
  int n = static_cast<int>(succ.size());
  std::vector<int> picked = rng.sample_indices(n, std::min(probes, n));
  std::sort(picked.begin(), picked.end(), [&](int a, int b) {
    double sa = unit_score(p, succ[static_cast<std::size_t>(a)]);
    double sb = unit_score(p, succ[static_cast<std::size_t>(b)]);
    if (sa != sb) return sa < sb;
    return succ[static_cast<std::size_t>(a)].server < succ[static_cast<std::size_t>(b)].server;
  });
  return picked;
}

}  // namespace

int p_pod_choose(std::span<const SuccessorView> succ, int d, const ControlParams& p, Rng& rng) {
  if (succ.empty()) throw SimError("p-pod: no successors to probe");
  if (d < 1) throw std::invalid_argument("p-pod: probe count must be >= 1");
  std::vector<int> ranked = probe_and_rank(succ, d, p, rng);
  return succ[static_cast<std::size_t>(ranked.front())].server;
}

namespace {

std::vector<Batch> split_batches(int carry, int batch, const std::vector<int>& targets,
                                 std::span<const SuccessorView> succ) {
  std::vector<Batch> out;
  int left = carry;
  for (std::size_t i = 0; i < targets.size() && left > 0; ++i) {
    int take = std::min(left, batch);
    out.push_back(Batch{succ[static_cast<std::size_t>(targets[i])].server, take});
    left -= take;
  }
  return out;
}

}  // namespace

std::vector<Batch> p_bs_assign(int carry, int batch, int d, std::span<const SuccessorView> succ,
                               const ControlParams& p, Rng& rng) {
  if (carry < 0) throw std::invalid_argument("p-bs: negative carry");
  if (batch < 1) throw std::invalid_argument("p-bs: batch size must be >= 1");
  if (d < 1) throw std::invalid_argument("p-bs: probe ratio must be >= 1");
  if (carry == 0) return {};
  if (succ.empty()) throw SimError("p-bs: no successors to probe");
  int z = (carry + batch - 1) / batch;
  std::vector<int> ranked = probe_and_rank(succ, d * z, p, rng);
  // one batch per distinct target, wrapping in score order when z > probed
  std::vector<int> targets;
  targets.reserve(static_cast<std::size_t>(z));
  for (int i = 0; i < z; ++i) {
    targets.push_back(ranked[static_cast<std::size_t>(i) % ranked.size()]);
  }
  return split_batches(carry, batch, targets, succ);
}

std::vector<Batch> p_bf_assign(int carry, int batch, int d, std::span<const SuccessorView> succ,
                               const ControlParams& p, Rng& rng) {
  if (carry < 0) throw std::invalid_argument("p-bf: negative carry");
  if (batch < 1) throw std::invalid_argument("p-bf: batch size must be >= 1");
  if (d < 1) throw std::invalid_argument("p-bf: probe ratio must be >= 1");
  if (carry == 0) return {};
  if (succ.empty()) throw SimError("p-bf: no successors to probe");
  int z = (carry + batch - 1) / batch;
  int n = static_cast<int>(succ.size());
  std::vector<int> probed = rng.sample_indices(n, std::min(d * z, n));

  std::vector<int> filled(succ.size(), 0);  // provisional queue growth
  std::vector<Batch> out;
  int left = carry;
  for (int b = 0; b < z; ++b) {
    int best = -1;
    double best_score = 0.0;
    for (int i : probed) {
      const auto& s = succ[static_cast<std::size_t>(i)];
      double score = p.V * s.w +
                     p.alpha * static_cast<double>(s.queue + filled[static_cast<std::size_t>(i)]);
      if (best < 0 || score < best_score ||
          (score == best_score && s.server < succ[static_cast<std::size_t>(best)].server)) {
        best = i;
        best_score = score;
      }
    }
    int take = std::min(left, batch);
    out.push_back(Batch{succ[static_cast<std::size_t>(best)].server, take});
    filled[static_cast<std::size_t>(best)] += take;
    left -= take;
  }
  return out;
}

int baseline_choose(ChainingVariant v, std::span<const SuccessorView> succ, int succ_phi_max,
                    Rng& rng) {
  if (succ.empty()) throw SimError("baseline: no successors");
  switch (v) {
    case ChainingVariant::Random:
      return succ[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(succ.size()) - 1))]
          .server;
    case ChainingVariant::Jsq: {
      int qmin = succ.front().queue;
      for (const auto& s : succ) qmin = std::min(qmin, s.queue);
      std::vector<int> tied;
      for (std::size_t i = 0; i < succ.size(); ++i) {
        if (succ[i].queue == qmin) tied.push_back(static_cast<int>(i));
      }
      int pick = tied[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(tied.size()) - 1))];
      return succ[static_cast<std::size_t>(pick)].server;
    }
    case ChainingVariant::OneHop: {
      int best = -1;
      for (std::size_t i = 0; i < succ.size(); ++i) {
        if (succ[i].queue >= succ_phi_max) continue;  // busy, no idle capacity
        if (best < 0 || succ[i].w < succ[static_cast<std::size_t>(best)].w) {
          best = static_cast<int>(i);
        }
      }
      if (best < 0) {  // everyone busy: nearest instance regardless
        for (std::size_t i = 0; i < succ.size(); ++i) {
          if (best < 0 || succ[i].w < succ[static_cast<std::size_t>(best)].w) {
            best = static_cast<int>(i);
          }
        }
      }
      return succ[static_cast<std::size_t>(best)].server;
    }
    default:
      throw std::invalid_argument("baseline_choose: not a baseline variant");
  }
}

std::vector<std::vector<Batch>> ScheduleStrategy::chain(const Model& m, const QueueSystem& qs) {
  if (spec_.variant == ChainingVariant::Poscars) return decide_chaining(m, qs, params_);

  std::vector<std::vector<Batch>> out(static_cast<std::size_t>(m.index.count()));
  for (int iid = 0; iid < m.index.count(); ++iid) {
    const auto& ref = m.index.instances[static_cast<std::size_t>(iid)];
    if (m.catalog.is_terminal(ref.vnf)) continue;
    auto [up, down] = chain_neighbors(m.catalog, ref.vnf);
    (void)up;
    std::vector<SuccessorView> succ;
    for (int sid : m.index.of_vnf[static_cast<std::size_t>(*down)]) {
      int server = m.index.instances[static_cast<std::size_t>(sid)].server;
      double w =
          m.comm.cost[static_cast<std::size_t>(ref.server)][static_cast<std::size_t>(server)];
      if (!std::isfinite(w)) continue;
      succ.push_back(SuccessorView{server, qs.queue_len(sid), w});
    }
    if (succ.empty()) {
      throw SimError("no reachable successor for vnf " + std::to_string(ref.vnf));
    }
    int carry = qs.carry_len(iid);
    auto& mine = out[static_cast<std::size_t>(iid)];
    switch (spec_.variant) {
      case ChainingVariant::PPod: {
        probes_ += std::min<long long>(spec_.probe_ratio, static_cast<long long>(succ.size()));
        int server = p_pod_choose(succ, spec_.probe_ratio, params_, rng_);
        mine.push_back(Batch{server, carry});
        break;
      }
      case ChainingVariant::PBs:
      case ChainingVariant::PBf: {
        if (carry > 0) {
          int z = (carry + spec_.batch - 1) / spec_.batch;
          probes_ += std::min<long long>(static_cast<long long>(spec_.probe_ratio) * z,
                                         static_cast<long long>(succ.size()));
        }
        mine = spec_.variant == ChainingVariant::PBs
                   ? p_bs_assign(carry, spec_.batch, spec_.probe_ratio, succ, params_, rng_)
                   : p_bf_assign(carry, spec_.batch, spec_.probe_ratio, succ, params_, rng_);
        break;
      }
      default: {
        int phi = m.catalog.vnfs[static_cast<std::size_t>(*down)].phi_max;
        int server = baseline_choose(spec_.variant, succ, phi, rng_);
        mine.push_back(Batch{server, carry});
        break;
      }
    }
  }
  return out;
}

DecisionSet ScheduleStrategy::decide(const Model& m, const QueueSystem& qs, std::int64_t) {
  probes_ = 0;
  DecisionSet d;
  AdmissionDecision adm = decide_admission(m, qs, params_);
  d.admit = std::move(adm.admit);
  d.admit_depth = std::move(adm.admit_depth);
  d.forward = chain(m, qs);
  d.alloc = decide_allocation(m, qs, params_);
  return d;
}

std::unique_ptr<Strategy> make_strategy(const ControlParams& params, const StrategySpec& spec,
                                        std::uint64_t seed) {
  return std::make_unique<ScheduleStrategy>(params, spec, seed);
}

}  // namespace poscars
