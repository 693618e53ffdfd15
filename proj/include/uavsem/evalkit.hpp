#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uavsem/label_schema.hpp"

namespace uavsem {

using LabelMatrix = std::vector<LabelVector>;

struct PooledCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
};

struct MicroPrf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  PooledCounts counts;
};

// Fraction of rows whose argmax over the main columns agrees.
// Errc::shape on row-count mismatch, Errc::empty_input on zero rows.
double main_accuracy(std::span<const LabelVector> truth, std::span<const LabelVector> pred);

// Micro-averaged precision/recall/F1 pooled over every cell in `columns`.
// Zero denominators yield 0 for the affected ratio.
MicroPrf micro_prf(std::span<const LabelVector> truth, std::span<const LabelVector> pred, IndexRange columns);

// Mean number of active flags per row inside `columns`. Errc::empty_input on zero rows.
double avg_tag_count(std::span<const LabelVector> m, IndexRange columns);

}  // namespace uavsem
