#include <blp/checker.hpp>

#include <atomic>
#include <thread>

namespace blp {
namespace {

using WitnessLists = std::vector<std::vector<PartitionWitness>>;  // indexed by request

struct PartitionTally {
  std::uint64_t states = 0;
  std::uint64_t requests = 0;
  std::uint64_t gap_count = 0;
  std::uint64_t overlap_count = 0;
  WitnessLists gaps;
  WitnessLists overlaps;
};

void keep(WitnessLists& into, WitnessLists&& from, std::size_t cap) {
  for (std::size_t r = 0; r < from.size(); ++r)
    for (auto& w : from[r]) {
      if (cap != 0 && into[r].size() >= cap) break;
      into[r].push_back(std::move(w));
    }
}

std::vector<PartitionWitness> flatten(WitnessLists&& lists) {
  std::vector<PartitionWitness> out;
  for (auto& list : lists)
    for (auto& w : list) out.push_back(std::move(w));
  return out;
}

}  // namespace

std::vector<std::string> matching_clauses(const ClauseList& clauses, const SystemState& st,
                                          const Request& request) {
  std::vector<std::string> out;
  for (const auto& clause : clauses)
    if (clause.guard(st, request)) out.push_back(clause.name);
  return out;
}

PartitionReport check_partition(RuleName rule, Variant variant, const Bounds& bounds,
                                const PartitionOptions& options) {
  const RuleTable& table = options.table != nullptr ? *options.table : RuleTable::standard(variant);
  const ClauseList& clauses = table.clauses(rule);
  const StateSpace space(bounds);
  const auto requests = enumerate_requests(bounds, rule);
  const std::size_t cap = options.max_witnesses;

  auto scan = [&](std::uint64_t first, std::uint64_t last, PartitionTally& tally) {
    tally.gaps.resize(requests.size());
    tally.overlaps.resize(requests.size());
    space.visit(first, last, [&](const SystemState& st, const StateCode&) {
      tally.states++;
      for (std::size_t r = 0; r < requests.size(); ++r) {
        const auto& request = requests[r];
        tally.requests++;
        std::size_t matched = 0;
        for (const auto& clause : clauses)
          if (clause.guard(st, request)) ++matched;
        if (matched == 1) continue;
        auto& count = matched == 0 ? tally.gap_count : tally.overlap_count;
        auto& list = (matched == 0 ? tally.gaps : tally.overlaps)[r];
        count++;
        if (cap == 0 || list.size() < cap)
          list.push_back(PartitionWitness{st, request, matching_clauses(clauses, st, request)});
      }
      return true;
    });
  };

  const std::uint64_t total = space.prefix_count();
  const unsigned workers = std::max(1u, options.workers);
  const std::uint64_t chunk_count = workers == 1 ? 1 : std::min<std::uint64_t>(total, std::uint64_t{workers} * 8);
  std::vector<PartitionTally> tallies(std::max<std::uint64_t>(chunk_count, 1));
  if (chunk_count <= 1) {
    scan(0, total, tallies.front());
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back([&] {
        for (auto c = next++; c < chunk_count; c = next++)
          scan(total * c / chunk_count, total * (c + 1) / chunk_count, tallies[c]);
      });
    for (auto& t : threads) t.join();
  }

  PartitionReport report{rule, variant};
  WitnessLists gaps(requests.size()), overlaps(requests.size());
  for (auto& t : tallies) {
    report.states_checked += t.states;
    report.requests_checked += t.requests;
    report.gap_count += t.gap_count;
    report.overlap_count += t.overlap_count;
    keep(gaps, std::move(t.gaps), cap);
    keep(overlaps, std::move(t.overlaps), cap);
  }
  report.gaps = flatten(std::move(gaps));
  report.overlaps = flatten(std::move(overlaps));
  return report;
}

}  // namespace blp
