#include <blp/checker.hpp>
#include <blp/scenario.hpp>

#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace blp {
namespace {

constexpr std::array<std::string_view, 6> kPropertyNames{
    "seccond", "starprop", "foFunctional", "fsFunctional", "ranBrInDomM", "ranBwInDomM",
};

using Clock = std::chrono::steady_clock;

struct Cell {
  std::uint64_t states = 0;
  std::uint64_t requests = 0;
  std::optional<Counterexample> counterexample;
};

// Accumulated results for one chunk of the search, indexed [rule][property].
struct Tally {
  std::array<std::array<Cell, 6>, kRuleCount> cells;
  std::array<std::chrono::nanoseconds, kRuleCount> elapsed{};

  void merge(Tally&& later) {
    for (std::size_t r = 0; r < kRuleCount; ++r) {
      for (std::size_t p = 0; p < 6; ++p) {
        auto& mine = cells[r][p];
        auto& theirs = later.cells[r][p];
        mine.states += theirs.states;
        mine.requests += theirs.requests;
        if (!mine.counterexample && theirs.counterexample) mine.counterexample = std::move(theirs.counterexample);
      }
      elapsed[r] += later.elapsed[r];
    }
  }
};

class ObligationSearch {
 public:
  ObligationSearch(const CheckOptions& options, const RuleTable& table)
      : options_(options), table_(table), space_(options.bounds) {
    for (auto rule : kAllRules)
      if (!options.rule || *options.rule == rule) rules_.push_back(rule);
    for (auto property : kAllProperties)
      if (!options.property || *options.property == property) properties_.push_back(property);
    for (auto rule : rules_) requests_[static_cast<std::size_t>(rule)] = enumerate_requests(options.bounds, rule);
  }

  const StateSpace& space() const { return space_; }

  // Checks every selected rule on each state against its full request list.
  void exhaustive_chunk(std::uint64_t first, std::uint64_t last, Tally& tally) const {
    std::vector<std::uint8_t> hypotheses;
    space_.visit_groups(first, last, [&](std::span<const SystemState> group, const StateCode&) {
      hypotheses.clear();
      for (const auto& st : group) hypotheses.push_back(hypothesis_mask(st));
      for (auto rule : rules_) {
        const auto start = Clock::now();
        const auto& requests = requests_[static_cast<std::size_t>(rule)];
        for (std::size_t i = 0; i < group.size(); ++i) check_state(group[i], hypotheses[i], rule, requests, tally);
        tally.elapsed[static_cast<std::size_t>(rule)] += Clock::now() - start;
      }
      return true;
    });
  }

  // Sample i draws one state and, per selected rule, one request, from a
  // generator seeded by (seed, i); results do not depend on chunking.
  void random_chunk(std::uint64_t seed, std::uint64_t first, std::uint64_t last, Tally& tally) const {
    for (std::uint64_t i = first; i < last; ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
      std::mt19937_64 gen(seq);
      auto next = [&gen] { return gen(); };
      const auto st = space_.sample(next);
      const auto hyp = hypothesis_mask(st);
      for (auto rule : rules_) {
        const auto start = Clock::now();
        const auto& requests = requests_[static_cast<std::size_t>(rule)];
        if (!requests.empty()) {
          const std::uint64_t n = requests.size();
          const std::uint64_t threshold = (0 - n) % n;
          std::uint64_t r = gen();
          while (r < threshold) r = gen();
          check_state(st, hyp, rule, std::span(&requests[r % n], 1), tally);
        } else {
          check_state(st, hyp, rule, {}, tally);
        }
        tally.elapsed[static_cast<std::size_t>(rule)] += Clock::now() - start;
      }
    }
  }

  ObligationReport report(Tally&& tally) const {
    ObligationReport out;
    for (auto rule : rules_) {
      for (auto property : properties_) {
        auto& cell = tally.cells[static_cast<std::size_t>(rule)][static_cast<std::size_t>(property)];
        ObligationResult result;
        result.obligation = Obligation{rule, property};
        result.states_checked = cell.states;
        result.requests_checked = cell.requests;
        result.counterexample = std::move(cell.counterexample);
        result.pass = !result.counterexample.has_value();
        result.elapsed = tally.elapsed[static_cast<std::size_t>(rule)];
        out.results.push_back(std::move(result));
      }
    }
    return out;
  }

 private:
  std::uint8_t hypothesis_mask(const SystemState& st) const {
    std::uint8_t mask = 0;
    for (auto property : properties_)
      if (hypothesis_holds(property, st, options_.strict_star_prop)) mask |= 1u << static_cast<unsigned>(property);
    return mask;
  }

  void check_state(const SystemState& st, std::uint8_t hyp, RuleName rule, std::span<const Request> requests,
                   Tally& tally) const {
    auto& row = tally.cells[static_cast<std::size_t>(rule)];
    for (auto property : properties_)
      if (hyp & (1u << static_cast<unsigned>(property))) row[static_cast<std::size_t>(property)].states++;
    if (hyp == 0) return;
    for (const auto& request : requests) {
      const auto* clause = table_.select(st, request);
      if (clause == nullptr) {
        throw std::runtime_error("no clause of " + std::string(to_string(rule)) +
                                 " applies to request '" + scenario::print_request(request) + "' in state\n" +
                                 scenario::print_state(st));
      }
      const SystemState after = clause->effect(st, request);
      for (auto property : properties_) {
        if (!(hyp & (1u << static_cast<unsigned>(property)))) continue;
        auto& cell = row[static_cast<std::size_t>(property)];
        cell.requests++;
        if (!cell.counterexample && !holds(property, after, options_.strict_star_prop))
          cell.counterexample = Counterexample{st, request, after, clause->decision, clause->name, property};
      }
    }
  }

  const CheckOptions& options_;
  const RuleTable& table_;
  StateSpace space_;
  std::vector<RuleName> rules_;
  std::vector<Property> properties_;
  std::array<std::vector<Request>, kRuleCount> requests_;
};

// Runs `work(first, last, tally)` over [0, total) split into ordered chunks
// and merges the tallies in chunk order, so the result is independent of the
// worker count.
template <class Work>
Tally run_chunked(std::uint64_t total, unsigned workers, Work work) {
  if (workers <= 1 || total <= 1) {
    Tally tally;
    work(0, total, tally);
    return tally;
  }
  const std::uint64_t chunk_count = std::min<std::uint64_t>(total, std::uint64_t{workers} * 8);
  std::vector<Tally> tallies(chunk_count);
  std::atomic<std::uint64_t> next_chunk{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto bounds_of = [&](std::uint64_t c) {
    return std::make_pair(total * c / chunk_count, total * (c + 1) / chunk_count);
  };
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (auto c = next_chunk++; c < chunk_count; c = next_chunk++) {
        try {
          auto [first, last] = bounds_of(c);
          work(first, last, tallies[c]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next_chunk = chunk_count;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  Tally merged = std::move(tallies.front());
  for (std::size_t c = 1; c < tallies.size(); ++c) merged.merge(std::move(tallies[c]));
  return merged;
}

}  // namespace

std::string_view to_string(Property property) { return kPropertyNames[static_cast<std::size_t>(property)]; }

std::optional<Property> parse_property(std::string_view name) {
  for (std::size_t i = 0; i < kPropertyNames.size(); ++i)
    if (kPropertyNames[i] == name) return static_cast<Property>(i);
  return std::nullopt;
}

bool holds(Property property, const SystemState& st, bool strict) {
  switch (property) {
    case Property::sec_cond: return sec_cond(st);
    case Property::star_prop: return strict ? strict_star_prop(st) : star_prop(st);
    case Property::fo_functional: return fo_functional(st);
    case Property::fs_functional: return fs_functional(st);
    case Property::reads_in_matrix: return reads_in_matrix(st);
    case Property::writes_in_matrix: return writes_in_matrix(st);
  }
  return false;
}

bool hypothesis_holds(Property property, const SystemState& st, bool strict) {
  if (!well_formed(st)) return false;
  if (property == Property::sec_cond || property == Property::star_prop) return holds(property, st, strict);
  return true;
}

bool ObligationReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

ObligationReport check_obligations(const CheckOptions& options) {
  const RuleTable& table = options.table != nullptr ? *options.table : RuleTable::standard();
  ObligationSearch search(options, table);
  Tally tally;
  if (const auto* random = std::get_if<RandomSampling>(&options.mode)) {
    if (random->samples == 0) throw std::invalid_argument("random mode needs at least one sample");
    tally = run_chunked(random->samples, options.workers, [&](std::uint64_t first, std::uint64_t last, Tally& t) {
      search.random_chunk(random->seed, first, last, t);
    });
  } else {
    tally = run_chunked(search.space().prefix_count(), options.workers,
                        [&](std::uint64_t first, std::uint64_t last, Tally& t) {
                          search.exhaustive_chunk(first, last, t);
                        });
  }
  return search.report(std::move(tally));
}

bool reproduces(const Counterexample& cex, const RuleTable& table, bool strict) {
  if (!hypothesis_holds(cex.violated, cex.before, strict)) return false;
  const auto* clause = table.select(cex.before, cex.request);
  if (clause == nullptr || clause->name != cex.clause || clause->decision != cex.decision) return false;
  const auto after = clause->effect(cex.before, cex.request);
  return after == cex.after && !holds(cex.violated, after, strict);
}

}  // namespace blp
