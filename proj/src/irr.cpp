#include "tqeval/irr.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace tqeval {

RaterLabelMatrix::RaterLabelMatrix(
    std::vector<std::vector<std::int64_t>> counts)
    : counts_(std::move(counts)) {
  if (counts_.empty()) {
    throw std::domain_error("contingency matrix must not be empty");
  }
  for (const auto& row : counts_) {
    if (row.size() != counts_.size()) {
      throw std::domain_error("contingency matrix must be square");
    }
    for (std::int64_t c : row) {
      if (c < 0) {
        throw std::domain_error("contingency counts must be non-negative");
      }
      total_ += c;
    }
  }
  if (total_ == 0) {
    throw std::domain_error("contingency matrix must contain observations");
  }
}

RaterLabelMatrix RaterLabelMatrix::from_label_pairs(
    std::span<const std::pair<std::string, std::string>> pairs) {
  std::map<std::string, std::size_t> categories;
  for (const auto& [a, b] : pairs) {
    categories.emplace(a, 0);
    categories.emplace(b, 0);
  }
  std::size_t next = 0;
  for (auto& [label, index] : categories) index = next++;

  std::vector<std::vector<std::int64_t>> counts(
      categories.size(), std::vector<std::int64_t>(categories.size(), 0));
  for (const auto& [a, b] : pairs) {
    ++counts[categories[a]][categories[b]];
  }
  return RaterLabelMatrix(std::move(counts));
}

double RaterLabelMatrix::observed_agreement() const {
  std::int64_t diagonal = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) diagonal += counts_[i][i];
  return static_cast<double>(diagonal) / static_cast<double>(total_);
}

double RaterLabelMatrix::chance_agreement() const {
  const double n = static_cast<double>(total_);
  double sum = 0.0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    std::int64_t row_marginal = 0;
    std::int64_t col_marginal = 0;
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      row_marginal += counts_[i][j];
      col_marginal += counts_[j][i];
    }
    sum += (static_cast<double>(row_marginal) / n) *
           (static_cast<double>(col_marginal) / n);
  }
  return sum;
}

double cohen_kappa(const KappaProportions& inp) {
  if (!(inp.observed_agreement >= 0.0) || !(inp.observed_agreement <= 1.0)) {
    throw std::domain_error("observed agreement must lie in [0, 1]");
  }
  if (!(inp.chance_agreement >= 0.0) || !(inp.chance_agreement <= 1.0)) {
    throw std::domain_error("chance agreement must lie in [0, 1]");
  }
  if (inp.chance_agreement == 1.0) {
    throw std::domain_error(
        "kappa is undefined when chance agreement equals 1");
  }
  return (inp.observed_agreement - inp.chance_agreement) /
         (1.0 - inp.chance_agreement);
}

double cohen_kappa(const KappaFrequencies& inp) {
  const double n = static_cast<double>(inp.total);
  if (inp.total <= 0) {
    throw std::domain_error("frequency total must be positive");
  }
  if (inp.observed_count < 0 || inp.observed_count > inp.total) {
    throw std::domain_error("observed count must lie in [0, N]");
  }
  if (!(inp.chance_count >= 0.0) || !(inp.chance_count <= n)) {
    throw std::domain_error("chance count must lie in [0, N]");
  }
  if (inp.chance_count == n) {
    throw std::domain_error("kappa is undefined when chance count equals N");
  }
  return (static_cast<double>(inp.observed_count) - inp.chance_count) /
         (n - inp.chance_count);
}

double cohen_kappa(const RaterLabelMatrix& m) {
  const double p_e = m.chance_agreement();
  if (p_e == 1.0) {
    throw std::domain_error(
        "kappa is undefined: both raters use a single identical category");
  }
  return cohen_kappa(KappaProportions{m.observed_agreement(), p_e});
}

AgreementPair pairwise_agreement(double first_score, double second_score) {
  if (!(first_score > 0.0) || !(second_score > 0.0)) {
    throw std::domain_error(
        "pairwise agreement requires strictly positive scores");
  }
  const double gap = std::fabs(second_score - first_score);
  return AgreementPair{1.0 - gap / first_score, 1.0 - gap / second_score};
}

}  // namespace tqeval
