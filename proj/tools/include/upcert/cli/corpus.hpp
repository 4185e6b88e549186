#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upcert/decide.hpp"

namespace upcert::cli {

struct ExpectedValue {
  std::string point;  // exact critical point in the input grammar
  std::string value;  // exact P(point)
};

struct ExpectedVerdict {
  Query query;
  Status status;
  std::string theorem;
  /// Value of the last certificate row, when pinned (band comparisons).
  std::string last_value;
};

struct ExpectedURS {
  std::string conclusion;
  int cardinality = 0;
  std::string condition;
};

struct CorpusEntry {
  std::string id;
  std::string source;
  int n = 0;
  int k = 0;
  int t = 0;
  int t_prime = 0;
  bool is_cip = false;
  std::vector<ExpectedValue> values;
  std::vector<ExpectedVerdict> verdicts;
  std::optional<ExpectedURS> urs;
};

/// z^n + a z^(n-m) + (a^2/4) z^(n-2m) + c. Throws InvalidArgument unless
/// gcd(m, n) = 1, n >= 2m + 3, a != 0 and the polynomial is squarefree.
std::string family_source(int n, int m, const Rational& a, const Rational& c);

const std::vector<CorpusEntry>& corpus();

struct EntryResult {
  std::string id;
  std::vector<std::string> mismatches;
  /// Deterministic JSON of the structure report and every checked verdict.
  std::string document;
  bool pass() const { return mismatches.empty(); }
};

EntryResult check_entry(const CorpusEntry& e, const PrecisionConfig& config = {});

/// Entries whose id contains `filter`, checked on `jobs` worker threads;
/// results keep corpus order.
std::vector<EntryResult> run_corpus(const std::string& filter, int jobs, const PrecisionConfig& config = {});

}  // namespace upcert::cli
