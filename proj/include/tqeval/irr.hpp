#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tqeval {

// Agreement expressed as proportions of units.
struct KappaProportions {
  double observed_agreement;  // in [0, 1]
  double chance_agreement;    // in [0, 1); kappa is undefined at 1
};

// Agreement expressed as frequencies. The chance count may be fractional
// (it is an expectation).
struct KappaFrequencies {
  std::int64_t observed_count;
  double chance_count;
  std::int64_t total;
};

// Square contingency table of category assignments by two raters.
// Rows index the first rater's categories, columns the second's.
class RaterLabelMatrix {
 public:
  explicit RaterLabelMatrix(std::vector<std::vector<std::int64_t>> counts);

  static RaterLabelMatrix from_label_pairs(
      std::span<const std::pair<std::string, std::string>> pairs);

  std::size_t categories() const { return counts_.size(); }
  std::int64_t at(std::size_t row, std::size_t col) const {
    return counts_[row][col];
  }
  std::int64_t total() const { return total_; }

  double observed_agreement() const;  // trace / total
  double chance_agreement() const;    // sum of marginal products / total^2

 private:
  std::vector<std::vector<std::int64_t>> counts_;
  std::int64_t total_ = 0;
};

// Cohen (1960): (p_o - p_e) / (1 - p_e). May be negative when agreement
// falls below chance.
double cohen_kappa(const KappaProportions& inp);
double cohen_kappa(const KappaFrequencies& inp);
double cohen_kappa(const RaterLabelMatrix& m);

// Each score's relative closeness to the other, as used when comparing two
// quality ratings: 1 - |a - b| / reference. The two directions use
// different denominators and are reported separately.
struct AgreementPair {
  double second_vs_first;  // how closely the second score agrees with the first
  double first_vs_second;  // how closely the first score agrees with the second

  bool operator==(const AgreementPair&) const = default;
};

AgreementPair pairwise_agreement(double first_score, double second_score);

}  // namespace tqeval
