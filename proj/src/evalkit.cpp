#include "uavsem/evalkit.hpp"

#include <fmt/format.h>

#include "uavsem/errors.hpp"

namespace uavsem {
namespace {

void check_shapes(std::span<const LabelVector> truth, std::span<const LabelVector> pred, IndexRange columns) {
  if (truth.size() != pred.size()) {
    throw Error(Errc::shape, fmt::format("truth has {} rows, prediction has {}", truth.size(), pred.size()));
  }
  if (columns.end() > kLabelCount) {
    throw Error(Errc::shape, fmt::format("column range [{}, {}) exceeds {} columns", columns.first, columns.end(),
                                         kLabelCount));
  }
}

std::size_t main_argmax(const LabelVector& row) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kMainCount; ++i) {
    if (row[i] > row[best]) best = i;
  }
  return best;
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double main_accuracy(std::span<const LabelVector> truth, std::span<const LabelVector> pred) {
  check_shapes(truth, pred, kMainRange);
  if (truth.empty()) throw Error(Errc::empty_input, "main_accuracy on empty matrices");
  std::size_t hits = 0;
  for (std::size_t r = 0; r < truth.size(); ++r) {
    if (main_argmax(truth[r]) == main_argmax(pred[r])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

MicroPrf micro_prf(std::span<const LabelVector> truth, std::span<const LabelVector> pred, IndexRange columns) {
  check_shapes(truth, pred, columns);
  MicroPrf out;
  auto& c = out.counts;
  for (std::size_t r = 0; r < truth.size(); ++r) {
    for (std::size_t i = columns.first; i < columns.end(); ++i) {
      const bool t = truth[r][i] != 0;
      const bool p = pred[r][i] != 0;
      c.tp += (t && p);
      c.fp += (!t && p);
      c.fn += (t && !p);
    }
  }
  out.precision = ratio(c.tp, c.tp + c.fp);
  out.recall = ratio(c.tp, c.tp + c.fn);
  const double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

double avg_tag_count(std::span<const LabelVector> m, IndexRange columns) {
  if (m.empty()) throw Error(Errc::empty_input, "avg_tag_count on an empty matrix");
  std::uint64_t active = 0;
  for (const auto& row : m) {
    for (std::size_t i = columns.first; i < columns.end(); ++i) active += row[i] != 0;
  }
  return static_cast<double>(active) / static_cast<double>(m.size());
}

}  // namespace uavsem
